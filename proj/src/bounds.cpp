#include "capq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "capq/errors.hpp"
#include "capq/hyperbolic.hpp"
#include "capq/special_functions.hpp"

namespace capq {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void domain(const std::string& msg) { throw Error(ErrorCode::DomainError, msg); }

void require_capacity(double cap, const char* what) {
  if (!(cap > 0.0) || !std::isfinite(cap)) domain(std::string(what) + " needs a capacity > 0");
}

void require_length(double ell, const char* what) {
  if (!(ell > 0.0) || !std::isfinite(ell)) domain(std::string(what) + " needs ell > 0");
}

}  // namespace

Beta0Check beta0_check() {
  Beta0Check c;
  c.oracle = teichmuller_ring_modulus();
  c.difference = std::abs(c.stored - c.oracle);
  c.consistent = c.difference <= 5e-4;
  return c;
}

double k_zero_level(double cap) {
  require_capacity(cap, "k_zero_level");
  return 1.0 + 8.0 * kBeta0 / cap;
}

double k_level(double cap, double a) {
  require_capacity(cap, "k_level");
  if (!(std::abs(a) < 1.0)) domain("k_level needs |a| < 1");
  return (1.0 + 8.0 * kBeta0 / cap) / (1.0 - std::abs(a));
}

double k_homotopy(double cap_lower_bound) {
  require_capacity(cap_lower_bound, "k_homotopy");
  return 1.0 + 8.0 * kBeta0 / cap_lower_bound;
}

double k_between_levels(double a, double b) {
  if (!(a > -1.0 && a <= b && b < 1.0)) domain("k_between_levels needs -1 < a <= b < 1");
  return std::max((b + 1.0) / (a + 1.0), (1.0 - b) / (1.0 - a));
}

double k_annulus_circle_map(double r, double s, double t) {
  if (!(r > 0.0 && r < 1.0)) domain("k_annulus_circle_map needs 0 < r < 1");
  if (!(s > r && s < 1.0 / r && t > r && t < 1.0 / r)) {
    domain("k_annulus_circle_map needs r < s, t < 1/r");
  }
  if (s > t) std::swap(s, t);
  const double lr = std::log(r), ls = std::log(s), lt = std::log(t);
  return std::max((lt - lr) / (ls - lr), (lt + lr) / (ls + lr));
}

double geodesic_collar_factor(double ell) {
  require_length(ell, "geodesic_collar_factor");
  return kPi / ell * arccos_tanh(0.5 * ell);
}

double k_geodesic(double ell) {
  require_length(ell, "k_geodesic");
  return 1.0 + 4.0 * kBeta0 * ell / (kPi * arccos_tanh(0.5 * ell));
}

double k_geodesic_doubly_connected(double ell) {
  require_length(ell, "k_geodesic_doubly_connected");
  return 1.0 + 4.0 * kBeta0 * ell / (kPi * kPi);
}

double k_geodesic_simplified(double ell) {
  require_length(ell, "k_geodesic_simplified");
  return 1.0 + 5.0 * ell / kPi * std::sqrt(std::exp(ell) + 1.0);
}

double k_geodesic_small(double ell) {
  require_length(ell, "k_geodesic_small");
  if (ell > 1.0) domain("k_geodesic_small needs ell <= 1");
  const double log_inv_r0 = collar_log_inverse_radius(ell);
  if (log_inv_r0 < 2.0 * kBeta0) {
    throw Error(ErrorCode::ValidityCondition,
                "log(1/r0) = " + std::to_string(log_inv_r0) + " is below 2 beta0");
  }
  return 1.0 + 1.5 * ell;
}

namespace {

struct KindInfo {
  BoundKind kind;
  std::string_view name;
  std::vector<std::string> inputs;
};

const std::vector<KindInfo>& kind_table() {
  static const std::vector<KindInfo> table = {
      {BoundKind::Level, "k_level", {"cap", "a"}},
      {BoundKind::ZeroLevel, "k_zero_level", {"cap"}},
      {BoundKind::Homotopy, "k_homotopy", {"cap"}},
      {BoundKind::BetweenLevels, "k_between_levels", {"a", "b"}},
      {BoundKind::AnnulusCircleMap, "k_annulus_circle_map", {"r", "s", "t"}},
      {BoundKind::Geodesic, "k_geodesic", {"ell"}},
      {BoundKind::GeodesicDoublyConnected, "k_geodesic_doubly_connected", {"ell"}},
      {BoundKind::GeodesicSimplified, "k_geodesic_simplified", {"ell"}},
      {BoundKind::GeodesicSmall, "k_geodesic_small", {"ell"}},
  };
  return table;
}

const KindInfo& info(BoundKind kind) {
  for (const auto& k : kind_table()) {
    if (k.kind == kind) return k;
  }
  throw Error(ErrorCode::UsageError, "unknown bound kind");
}

}  // namespace

std::string_view to_string(BoundKind kind) { return info(kind).name; }

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (const auto& k : kind_table()) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = [] {
    std::vector<BoundKind> v;
    for (const auto& k : kind_table()) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

const std::vector<std::string>& bound_inputs(BoundKind kind) { return info(kind).inputs; }

BoundReport evaluate_bound(BoundKind kind, const std::map<std::string, double>& inputs) {
  const KindInfo& ki = info(kind);
  for (const auto& [name, value] : inputs) {
    if (std::find(ki.inputs.begin(), ki.inputs.end(), name) == ki.inputs.end()) {
      throw Error(ErrorCode::UsageError,
                  std::string(ki.name) + " does not take an input named '" + name + "'");
    }
  }
  BoundReport rep;
  rep.kind = kind;
  std::vector<double> v;
  for (const auto& name : ki.inputs) {
    const auto it = inputs.find(name);
    if (it == inputs.end()) {
      throw Error(ErrorCode::UsageError,
                  std::string(ki.name) + " is missing input '" + name + "'");
    }
    rep.inputs.emplace_back(name, it->second);
    v.push_back(it->second);
  }
  switch (kind) {
    case BoundKind::Level: rep.K = k_level(v[0], v[1]); break;
    case BoundKind::ZeroLevel: rep.K = k_zero_level(v[0]); break;
    case BoundKind::Homotopy: rep.K = k_homotopy(v[0]); break;
    case BoundKind::BetweenLevels: rep.K = k_between_levels(v[0], v[1]); break;
    case BoundKind::AnnulusCircleMap: rep.K = k_annulus_circle_map(v[0], v[1], v[2]); break;
    case BoundKind::Geodesic: rep.K = k_geodesic(v[0]); break;
    case BoundKind::GeodesicDoublyConnected: rep.K = k_geodesic_doubly_connected(v[0]); break;
    case BoundKind::GeodesicSimplified: rep.K = k_geodesic_simplified(v[0]); break;
    case BoundKind::GeodesicSmall: rep.K = k_geodesic_small(v[0]); break;
  }
  return rep;
}

}  // namespace capq
