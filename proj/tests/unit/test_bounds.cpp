#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "capq/bounds.hpp"
#include "capq/errors.hpp"
#include "capq/special_functions.hpp"

using namespace capq;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("stored beta0 and its oracle") {
  const Beta0Check c = beta0_check();
  CHECK(c.stored == 2.4984);
  CHECK(c.oracle == doctest::Approx(teichmuller_ring_modulus()));
  CHECK(c.difference == doctest::Approx(std::abs(c.stored - c.oracle)));
  CHECK(c.consistent == (c.difference <= 5e-4));
}

TEST_CASE("closed forms against direct evaluation") {
  const double b = kBeta0;
  CHECK(k_zero_level(2.0) == doctest::Approx(1 + 8 * b / 2.0));
  CHECK(k_level(1.5, 0.5) == doctest::Approx(2 * (1 + 8 * b / 1.5)));
  CHECK(k_level(1.5, -0.5) == doctest::Approx(k_level(1.5, 0.5)));
  CHECK(k_homotopy(0.7) == doctest::Approx(1 + 8 * b / 0.7));
  CHECK(k_between_levels(-0.2, 0.4) == doctest::Approx(std::max(1.4 / 0.8, 0.6 / 1.2)));
  CHECK(k_geodesic(2.0) == doctest::Approx(1 + 8 * b / (pi * std::acos(std::tanh(1.0)))).epsilon(1e-13));
  CHECK(k_geodesic(2.0) == doctest::Approx(10.0239).epsilon(1e-5));
  CHECK(k_geodesic_doubly_connected(1.0) == doctest::Approx(1 + 4 * b / (pi * pi)));
  CHECK(k_geodesic_simplified(1.0) == doctest::Approx(1 + 5 / pi * std::sqrt(std::exp(1.0) + 1)));
  CHECK(k_geodesic_small(0.5) == doctest::Approx(1.75));
  CHECK(k_geodesic_small(1.0) == doctest::Approx(2.5));
  CHECK(k_geodesic_small(0.1) == doctest::Approx(1.15));
  CHECK(geodesic_collar_factor(2.0) == doctest::Approx(pi / 2 * std::acos(std::tanh(1.0))));
}

TEST_CASE("annulus circle map: swapped radii and identity") {
  CHECK(k_annulus_circle_map(0.2, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(k_annulus_circle_map(0.2, 1.5, 0.8) == doctest::Approx(k_annulus_circle_map(0.2, 0.8, 1.5)));
}

TEST_CASE("k_level(c, 0) equals k_zero_level(c) exactly") {
  for (double c = 0.05; c < 20.0; c *= 1.37) CHECK(k_level(c, 0.0) == k_zero_level(c));
}

TEST_CASE("between-levels bound equals the annulus circle map on a 10x10x10 grid") {
  for (int ir = 1; ir <= 10; ++ir) {
    const double r = 0.09 * ir;
    for (int ia = 0; ia < 10; ++ia) {
      for (int ib = 0; ib < 10; ++ib) {
        double a = -0.9 + 0.2 * ia, b = -0.9 + 0.2 * ib;
        if (a > b) std::swap(a, b);
        const double lhs = k_between_levels(a, b);
        const double rhs = k_annulus_circle_map(r, std::pow(r, -a), std::pow(r, -b));
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("collar factor is decreasing and convex") {
  std::vector<double> f;
  for (int i = 0; i < 200; ++i) f.push_back(geodesic_collar_factor(0.05 + 0.05 * i));
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] < f[i - 1]);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) CHECK(f[i - 1] - 2 * f[i] + f[i + 1] > 0.0);
}

TEST_CASE("property: bounds are at least 1 and monotone in their inputs") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> cap(0.01, 50.0), lev(-0.99, 0.99), len(0.01, 20.0);
  for (int t = 0; t < 500; ++t) {
    const double c1 = cap(rng), c2 = cap(rng), a = lev(rng), l1 = len(rng), l2 = len(rng);
    CHECK(k_level(c1, a) >= 1.0);
    CHECK((k_zero_level(c1) < k_zero_level(c2)) == (c1 > c2));
    CHECK(k_level(c1, a) >= k_zero_level(c1));
    CHECK((k_geodesic(l1) < k_geodesic(l2)) == (l1 < l2));
    CHECK(k_geodesic_doubly_connected(l1) <= k_geodesic(l1));
  }
}

TEST_CASE("domain and validity errors") {
  CHECK(code_of([] { k_level(0.0, 0.1); }) == ErrorCode::DomainError);
  CHECK(code_of([] { k_level(1.0, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { k_between_levels(0.5, 0.1); }) == ErrorCode::DomainError);
  CHECK(code_of([] { k_annulus_circle_map(0.5, 3.0, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { k_geodesic(-1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { k_geodesic_small(2.0); }) == ErrorCode::DomainError);
}

TEST_CASE("the small-geodesic bound checks its validity condition") {
  // log(1/r0) = (2 pi / ell) arccos(tanh(ell / 2)) falls below 2 beta0 for ell near 1
  for (double ell = 0.05; ell <= 1.0; ell += 0.05) {
    const double log_inv_r0 = 2 * pi / ell * std::acos(std::tanh(ell / 2));
    if (log_inv_r0 >= 2 * kBeta0) {
      CHECK(k_geodesic_small(ell) == doctest::Approx(1 + 1.5 * ell));
    } else {
      CHECK(code_of([ell] { k_geodesic_small(ell); }) == ErrorCode::ValidityCondition);
    }
  }
}

TEST_CASE("bound registry and evaluation by name") {
  for (BoundKind k : all_bound_kinds()) {
    CHECK(parse_bound_kind(to_string(k)) == k);
    CHECK_FALSE(bound_inputs(k).empty());
  }
  CHECK_FALSE(parse_bound_kind("nonsense").has_value());
  const BoundReport r = evaluate_bound(BoundKind::Level, {{"cap", 1.2}, {"a", 0.3}});
  CHECK(r.K == doctest::Approx(k_level(1.2, 0.3)));
  CHECK(r.inputs.size() == 2);
  CHECK(r.beta0 == kBeta0);
  CHECK(code_of([] { evaluate_bound(BoundKind::Level, {{"cap", 1.2}}); }) == ErrorCode::UsageError);
  CHECK(code_of([] { evaluate_bound(BoundKind::ZeroLevel, {{"cap", 1.2}, {"x", 1}}); }) ==
        ErrorCode::UsageError);
}
