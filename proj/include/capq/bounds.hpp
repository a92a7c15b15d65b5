#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace capq {

/// Modulus of the Teichmüller ring to four decimals, as quoted with the
/// distortion theorems. All bounds below are evaluated with this value.
inline constexpr double kBeta0 = 2.4984;

struct Beta0Check {
  double stored = kBeta0;
  double oracle = 0.0;      // 2 mu(2^(-1/4))
  double difference = 0.0;  // |stored - oracle|
  bool consistent = false;  // difference <= 5e-4
};

Beta0Check beta0_check();

// Each evaluator throws DomainError outside its open domain.

/// (1 / (1 - |a|)) (1 + 8 beta0 / cap) for the level curve {u = a}.
double k_level(double cap, double a);
/// 1 + 8 beta0 / cap for the zero level.
double k_zero_level(double cap);
/// 1 + 8 beta0 / cap_lower_bound, where cap_lower_bound is the capacity of
/// any doubly connected subdomain around the curve. A larger subdomain
/// capacity gives a smaller (still valid) K.
double k_homotopy(double cap_lower_bound);
/// max((b + 1) / (a + 1), (1 - b) / (1 - a)) for -1 < a <= b < 1.
double k_between_levels(double a, double b);
/// max((log t - log r) / (log s - log r), (log t + log r) / (log s + log r))
/// for 0 < r < 1 and r < s, t < 1/r. s > t is handled by swapping.
double k_annulus_circle_map(double r, double s, double t);
/// 1 + 4 beta0 ell / (pi arccos(tanh(ell/2))).
double k_geodesic(double ell);
/// 1 + 4 beta0 ell / pi^2.
double k_geodesic_doubly_connected(double ell);
/// 1 + (5 ell / pi) sqrt(e^ell + 1).
double k_geodesic_simplified(double ell);
/// 1 + 3 ell / 2 for 0 < ell <= 1. Throws ValidityCondition when
/// log(1/r0(ell)) < 2 beta0.
double k_geodesic_small(double ell);

/// (pi / ell) arccos(tanh(ell/2)); decreasing and convex in ell.
double geodesic_collar_factor(double ell);

enum class BoundKind {
  Level,
  ZeroLevel,
  Homotopy,
  BetweenLevels,
  AnnulusCircleMap,
  Geodesic,
  GeodesicDoublyConnected,
  GeodesicSimplified,
  GeodesicSmall,
};

std::string_view to_string(BoundKind kind);
std::optional<BoundKind> parse_bound_kind(std::string_view name);
const std::vector<BoundKind>& all_bound_kinds();
/// Input names a kind expects, in evaluation order.
const std::vector<std::string>& bound_inputs(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::ZeroLevel;
  std::vector<std::pair<std::string, double>> inputs;
  double K = 1.0;
  double beta0 = kBeta0;
};

/// Evaluates one bound from named inputs. Missing or unexpected names throw
/// UsageError.
BoundReport evaluate_bound(BoundKind kind, const std::map<std::string, double>& inputs);

}  // namespace capq
