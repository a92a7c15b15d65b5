#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "capq/geometry.hpp"

using namespace capq;

namespace {

std::vector<Point> regular_polygon(int n, double radius, Point c = {}) {
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    out.push_back({c.x + radius * std::cos(t), c.y + radius * std::sin(t)});
  }
  return out;
}

}  // namespace

TEST_CASE("segment distance to interior and endpoints") {
  CHECK(segment_distance({0.5, 2.0}, {0, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(segment_distance({-3.0, 4.0}, {0, 0}, {1, 0}) == doctest::Approx(5.0));
  CHECK(segment_distance({2.0, 0.0}, {1, 1}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("signed area of the unit square and its reversal") {
  std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(signed_area(sq) == doctest::Approx(1.0));
  std::vector<Point> rev(sq.rbegin(), sq.rend());
  CHECK(signed_area(rev) == doctest::Approx(-1.0));
}

TEST_CASE("winding number inside, outside and for a doubled loop") {
  auto poly = regular_polygon(40, 1.0);
  CHECK(winding_number(poly, {0.1, -0.2}) == 1);
  CHECK(winding_number(poly, {3.0, 0.0}) == 0);
  std::vector<Point> rev(poly.rbegin(), poly.rend());
  CHECK(winding_number(rev, {0.0, 0.0}) == -1);
  std::vector<Point> twice = poly;
  twice.insert(twice.end(), poly.begin(), poly.end());
  CHECK(winding_number(twice, {0.0, 0.0}) == 2);
}

TEST_CASE("point in polygon agrees with winding number on a convex polygon") {
  auto poly = regular_polygon(17, 1.3, {0.2, -0.1});
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 2000; ++t) {
    const Point p{u(rng), u(rng)};
    CHECK(point_in_polygon(p, poly, 1e-12) == (winding_number(poly, p) != 0));
  }
}

TEST_CASE("segments intersect: crossing, touching, collinear and disjoint") {
  CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 3}));
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("self intersection of a bow tie and a convex polygon") {
  std::vector<Point> bow{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK(first_self_intersection(bow, 0.0).has_value());
  auto poly = regular_polygon(64, 1.0);
  CHECK_FALSE(first_self_intersection(poly, 1e-12).has_value());
}

TEST_CASE("property: area and winding are invariant under rigid motions") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng() % 30);
    auto poly = regular_polygon(n, 0.5 + std::abs(u(rng)));
    const double th = std::numbers::pi * u(rng);
    const Point shift{3.0 * u(rng), 3.0 * u(rng)};
    std::vector<Point> moved;
    for (Point p : poly) {
      moved.push_back({std::cos(th) * p.x - std::sin(th) * p.y + shift.x,
                       std::sin(th) * p.x + std::cos(th) * p.y + shift.y});
    }
    CHECK(signed_area(moved) == doctest::Approx(signed_area(poly)).epsilon(1e-12));
    CHECK(winding_number(moved, shift) == 1);
  }
}
