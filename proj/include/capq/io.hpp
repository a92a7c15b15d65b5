#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "capq/bounds.hpp"
#include "capq/capacitor.hpp"
#include "capq/conformal_chain.hpp"
#include "capq/equipotential.hpp"
#include "capq/hyperbolic.hpp"
#include "capq/pipeline.hpp"
#include "capq/solver.hpp"

namespace capq {

inline constexpr std::string_view kSpecSchema = "capq-spec/1";
inline constexpr std::string_view kFieldSchema = "capq-field/1";
inline constexpr std::string_view kReportSchema = "capq-report/1";

/// Capacitor spec document:
///   {"schema": "capq-spec/1",
///    "shapes": [{"role": "E", "kind": "disc", "center": [x, y], "radius": r},
///               {"role": "F", "kind": "disc_complement", "center": [x, y], "radius": R},
///               {"role": "E", "kind": "polygon", "vertices": [[x, y], ...]},
///               {"role": "F", "kind": "slit", "from": [x, y], "to": [x, y], "half_width": w}],
///    "grid": {"bounds": [xmin, ymin, xmax, ymax], "resolution": n}}
/// Unknown or missing fields throw FormatError. Semantic checks are left to
/// validate_spec.
CapacitorSpec parse_spec(std::string_view json_text);
std::string serialize_spec(const CapacitorSpec& spec);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Writes `<stem>.bin` (row-major little-endian float64, resolution^2
/// values) and `<stem>.json` (dimensions, bounds, h, capacity, residual).
void write_field(const PotentialField& field, const std::filesystem::path& stem);
std::string field_header_json(const PotentialField& field, std::string_view data_file);

/// "x,y" rows with 17 significant digits, closing point included.
std::string curve_csv(const LevelCurve& curve);
std::string curve_json(const LevelCurve& curve);

std::string report_json(const AnalysisReport& report);
std::string bound_json(const BoundReport& bound);
std::string bounds_json(const std::vector<BoundReport>& bounds);
std::string collar_json(const CollarResult& collar);

/// Batch bound requests: [{"bound": "k_level", "inputs": {"cap": 1.2, "a": 0.5}}, ...]
std::vector<BoundReport> evaluate_bound_requests(std::string_view json_text);

/// Continua filled, level curves stroked, viewBox = grid bounds.
/// Throws DomainError if the report carries no curve.
std::string report_svg(const AnalysisReport& report);

/// Images under the chain of the circles |z| = rho for each rho in `radii`,
/// `samples` points each. Points the chain rejects are skipped.
struct ChainCurve {
  double radius = 0.0;
  std::vector<cplx> points;
};
std::vector<ChainCurve> chain_curves(const MapChain& chain, const std::vector<double>& radii,
                                     int samples);
std::string chain_csv(const std::vector<ChainCurve>& curves);
std::string chain_svg(const MapChain& chain, const std::vector<ChainCurve>& curves,
                      double half_width);

}  // namespace capq
