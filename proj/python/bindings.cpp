#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capq/bounds.hpp"
#include "capq/conformal_chain.hpp"
#include "capq/errors.hpp"
#include "capq/hyperbolic.hpp"
#include "capq/io.hpp"
#include "capq/pipeline.hpp"
#include "capq/special_functions.hpp"

namespace py = pybind11;
using namespace capq;

namespace {

struct Solved {
  PotentialField field;
};

py::array_t<double> field_values(const Solved& s) {
  const auto n = static_cast<py::ssize_t>(s.field.mask.n());
  py::array_t<double> out({n, n});
  std::copy(s.field.values.begin(), s.field.values.end(), out.mutable_data());
  return out;
}

BoundKind bound_kind(const std::string& name) {
  const auto k = parse_bound_kind(name);
  if (!k) throw Error(ErrorCode::UsageError, "unknown bound '" + name + "'");
  return *k;
}

}  // namespace

PYBIND11_MODULE(_capq, m) {
  m.doc() = "Conformal capacity, equipotentials and distortion bounds";

  static py::exception<Error> capq_error(m, "CapqError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string msg = e.what();
      if (!e.stage().empty()) msg += " [" + e.stage() + "]";
      py::set_error(capq_error, msg.c_str());
    }
  });

  m.attr("BETA0") = kBeta0;

  m.def("normalize_spec", [](const std::string& text) { return serialize_spec(parse_spec(text)); },
        py::arg("spec_json"), "Parse and re-serialise a spec document.");

  py::class_<Solved>(m, "Field")
      .def_property_readonly("capacity", [](const Solved& s) { return s.field.capacity; })
      .def_property_readonly("energy_capacity", [](const Solved& s) { return s.field.energy_capacity; })
      .def_property_readonly("dirichlet_energy", [](const Solved& s) { return s.field.dirichlet_energy; })
      .def_property_readonly("residual", [](const Solved& s) { return s.field.residual; })
      .def_property_readonly("iterations", [](const Solved& s) { return s.field.iterations; })
      .def_property_readonly("unreliable", [](const Solved& s) { return s.field.unreliable; })
      .def_property_readonly("resolution", [](const Solved& s) { return s.field.mask.n(); })
      .def_property_readonly("values", &field_values, "Potential per cell, indexed [row j, column i].")
      .def("interpolate", [](const Solved& s, double x, double y) { return s.field.interpolate({x, y}); })
      .def("level", [](const Solved& s, double a) {
        const LevelCurve c = extract_level(s.field, a);
        std::vector<std::pair<double, double>> pts;
        for (Point p : c.points) pts.emplace_back(p.x, p.y);
        return pts;
      }, py::arg("a"), "Closed level curve as (x, y) pairs.");

  m.def("solve", [](const std::string& text, double tolerance) {
    py::gil_scoped_release release;
    return Solved{solve_potential(rasterize(validate_spec(parse_spec(text))), tolerance)};
  }, py::arg("spec_json"), py::arg("tolerance") = 1e-10);

  m.def("analyze", [](const std::string& text, std::vector<double> levels,
                      std::vector<std::pair<double, double>> compare) {
    py::gil_scoped_release release;
    AnalysisReport rep = run_pipeline(parse_spec(text), std::move(levels));
    for (const auto& [a, b] : compare) compare_levels(rep, a, b);
    return report_json(rep);
  }, py::arg("spec_json"), py::arg("levels") = std::vector<double>{},
        py::arg("compare") = std::vector<std::pair<double, double>>{},
        "Full pipeline; returns the report as a JSON string.");

  m.def("bound", [](const std::string& kind, const std::map<std::string, double>& inputs) {
    return evaluate_bound(bound_kind(kind), inputs).K;
  }, py::arg("kind"), py::arg("inputs"));
  m.def("bound_kinds", [] {
    std::vector<std::string> out;
    for (BoundKind k : all_bound_kinds()) out.emplace_back(to_string(k));
    return out;
  });

  m.def("elliptic_K", &elliptic_K, py::arg("k"));
  m.def("elliptic_K_prime", &elliptic_K_prime, py::arg("k"));
  m.def("jacobi_sn", &jacobi_sn, py::arg("u"), py::arg("k"));
  m.def("groetzsch_mu", &groetzsch_mu, py::arg("r"));
  m.def("teichmuller_ring_modulus", &teichmuller_ring_modulus);
  m.def("solve_modulus_equation", &solve_modulus_equation, py::arg("r"));

  m.def("collar", [](double ell) {
    const CollarResult c = collar(ell);
    return py::dict(py::arg("ell") = c.ell, py::arg("r") = c.r, py::arg("r0") = c.r0,
                    py::arg("delta0") = c.delta0);
  }, py::arg("ell"));
  m.def("radial_distance", &radial_distance, py::arg("r"), py::arg("rho1"), py::arg("rho2"));

  py::class_<MapChain>(m, "MapChain")
      .def(py::init(&build_chain), py::arg("r"))
      .def_readonly("r", &MapChain::r)
      .def_readonly("m", &MapChain::m)
      .def_readonly("K", &MapChain::K)
      .def_property_readonly("ray_gap", &MapChain::ray_gap)
      .def_property_readonly("modulus", &MapChain::modulus)
      .def("__call__", &evaluate_chain, py::arg("z"))
      .def("trace", [](const MapChain& c, cplx z) {
        const auto w = trace_chain(c, z);
        return std::vector<cplx>(w.begin(), w.end());
      }, py::arg("z"));
}
