#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "capq/conformal_chain.hpp"
#include "capq/errors.hpp"
#include "capq/special_functions.hpp"

using namespace capq;
using std::numbers::pi;

namespace {

const MapChain& chain() {
  static const MapChain c = build_chain(1.0 / std::sqrt(2.0));
  return c;
}

cplx random_point(std::mt19937& rng, double r, double margin) {
  std::uniform_real_distribution<double> lr(std::log(r) + margin, -std::log(r) - margin);
  std::uniform_real_distribution<double> th(-pi, pi);
  return std::polar(std::exp(lr(rng)), th(rng));
}

}  // namespace

TEST_CASE("chain parameters for r = 1/sqrt 2") {
  const MapChain& c = chain();
  CHECK(c.m == doctest::Approx(0.7962652464).epsilon(1e-9));
  CHECK(c.K == doctest::Approx(1.98814696).epsilon(1e-8));
  CHECK(c.ray_gap() == doctest::Approx(0.11415797).epsilon(1e-7));
  CHECK(c.slit_half_length() == doctest::Approx(std::sqrt(c.m)));
  CHECK(c.modulus() == doctest::Approx(std::log(2.0)));
  CHECK(chain_stage_name(3) == "elliptic_sine");
  CHECK_THROWS_AS(build_chain(1.0), Error);
}

TEST_CASE("boundary circles land on the slit and the rays") {
  const ChainBoundaryCheck b = check_chain_boundary(chain(), 512);
  CHECK(b.inner_residual < 1e-9);
  CHECK(b.outer_residual < 1e-9);
  for (double r : {0.2, 0.5, 0.9}) {
    const ChainBoundaryCheck o = check_chain_boundary(build_chain(r), 256);
    CHECK(o.inner_residual < 1e-8);
    CHECK(o.outer_residual < 1e-8);
  }
}

TEST_CASE("final images of boundary circles: [-1, 1] and the rays |Im| >= c") {
  const MapChain& c = chain();
  for (int k = 0; k < 64; ++k) {
    const cplx e = std::polar(1.0, 2 * pi * (k + 0.3) / 64);
    const cplx in = evaluate_chain(c, c.r * (1 + 1e-12) * e);
    CHECK(std::abs(in.imag()) < 1e-6);
    CHECK(std::abs(in.real()) <= 1.0 + 1e-6);
    const cplx out = evaluate_chain(c, (1 - 1e-12) / c.r * e);
    CHECK(std::abs(out.real()) < 1e-5);
    CHECK(std::abs(out.imag()) >= c.ray_gap() - 1e-6);
  }
}

TEST_CASE("property: Cauchy-Riemann residual and odd symmetry") {
  std::mt19937 rng(31);
  const MapChain& c = chain();
  const double h = 1e-6;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const cplx z = random_point(rng, c.r, 0.02);
    try {
      const cplx fx = (evaluate_chain(c, z + h) - evaluate_chain(c, z - h)) / (2 * h);
      const cplx fy =
          (evaluate_chain(c, z + cplx(0, h)) - evaluate_chain(c, z - cplx(0, h))) / (2 * h);
      worst = std::max(worst, std::abs(fx + cplx(0, 1) * fy) / std::max(1.0, std::abs(fx)));
      CHECK(std::abs(evaluate_chain(c, -z) + evaluate_chain(c, z)) < 1e-9);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DomainViolation);
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("property: images avoid the slits and the map is injective on a lattice") {
  const MapChain& c = chain();
  std::vector<cplx> img;
  for (int i = 1; i < 24; ++i) {
    const double rho = std::exp(std::log(c.r) * (1 - 2.0 * i / 24));
    for (int k = 0; k < 48; ++k) {
      const cplx w = evaluate_chain(c, std::polar(rho, 2 * pi * (k + 0.25) / 48));
      const bool on_e = std::abs(w.imag()) < 1e-9 && std::abs(w.real()) <= 1;
      const bool on_f = std::abs(w.real()) < 1e-9 && std::abs(w.imag()) >= c.ray_gap();
      CHECK_FALSE(on_e);
      CHECK_FALSE(on_f);
      img.push_back(w);
    }
  }
  double closest = 1e300;
  for (std::size_t a = 0; a < img.size(); ++a) {
    for (std::size_t b = a + 1; b < img.size(); ++b) closest = std::min(closest, std::abs(img[a] - img[b]));
  }
  CHECK(closest > 1e-6);
}

TEST_CASE("domain violations carry the stage") {
  const MapChain& c = chain();
  try {
    evaluate_chain(c, {0.1, 0.0});
    FAIL("expected DomainViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
    CHECK(e.stage() == "stage 1");
  }
  CHECK_THROWS_AS(evaluate_chain(c, cplx(0.0, 1.0 / c.r)), Error);
}

TEST_CASE("Omega0 capacitor") {
  const CapacitorSpec s = omega0_spec(chain(), 3.0, 256);
  CHECK(s.shape_E.size() == 1);
  CHECK(s.shape_F.size() == 2);
  CHECK(s.shape_F[0].from.y == doctest::Approx(chain().ray_gap()));
  CHECK(s.grid_bounds == Rect{-3, -3, 3, 3});
  CHECK_NOTHROW(validate_spec(s));
}

TEST_CASE("radial stretch fixes both boundaries and carries s onto t") {
  const AnnulusSelfMap f = radial_stretch(0.2, 0.8, 1.7);
  CHECK(std::abs(f(std::polar(0.2, 1.0))) == doctest::Approx(0.2));
  CHECK(std::abs(f(std::polar(5.0, 2.0))) == doctest::Approx(5.0));
  CHECK(std::abs(f(std::polar(0.8, 3.0))) == doctest::Approx(1.7));
  CHECK(std::arg(f(std::polar(1.3, 0.7))) == doctest::Approx(0.7));
  CHECK(f.claimed_K == doctest::Approx(std::max(f.alpha_inner, f.alpha_outer)));
  CHECK(f.true_K >= f.claimed_K);
  CHECK_THROWS_AS(radial_stretch(0.2, 6.0, 1.0), Error);
}

TEST_CASE("property: stretching s to t and back is the identity") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const double r = 0.05 + 0.9 * u(rng);
    const double L = std::log(1 / r);
    const double s = std::exp(L * (1.8 * u(rng) - 0.9));
    const double tt = std::exp(L * (1.8 * u(rng) - 0.9));
    const AnnulusSelfMap f = radial_stretch(r, s, tt), g = radial_stretch(r, tt, s);
    const cplx z = random_point(rng, r, 1e-3);
    CHECK(std::abs(g(f(z)) - z) < 1e-10 * std::abs(z));
  }
}

TEST_CASE("pointwise distortion is max(alpha, 1/alpha) on each piece") {
  const AnnulusSelfMap f = radial_stretch(0.25, 0.9, 1.6);
  const double in = std::max(f.alpha_inner, 1 / f.alpha_inner);
  const double out = std::max(f.alpha_outer, 1 / f.alpha_outer);
  CHECK(pointwise_distortion(f, std::polar(0.5, 0.4), 1e-6) == doctest::Approx(in).epsilon(1e-6));
  CHECK(pointwise_distortion(f, std::polar(2.5, -2.0), 1e-6) == doctest::Approx(out).epsilon(1e-6));
  CHECK_THROWS_AS(pointwise_distortion(f, std::polar(0.9, 0.0), 1e-6), Error);
  CHECK_THROWS_AS(pointwise_distortion(f, std::polar(0.5, 0.0), 1e-3), Error);
}

TEST_CASE("the claimed bound misses the compressed piece for s = 1") {
  const double r = std::exp(-2.0);
  const AnnulusSelfMap f = radial_stretch(r, 1.0, std::exp(1.0));
  CHECK(f.claimed_K == doctest::Approx(1.5));
  CHECK(f.true_K == doctest::Approx(2.0));
}
