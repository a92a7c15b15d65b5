#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "capq/geometry.hpp"
#include "capq/solver.hpp"

namespace capq {

/// Closed polyline approximating {u = a}. `points.front() == points.back()`.
struct LevelCurve {
  double level = 0.0;
  std::vector<Point> points;
  double arc_length = 0.0;
  double cell_size = 0.0;  // h of the grid it was traced on

  // Anchors copied from the mask; nullopt for a continuum through infinity.
  std::optional<Point> e_anchor;
  std::optional<Point> f_anchor;

  int separating_components = 0;  // closed loops separating E from F
  int discarded_components = 0;    // other loops and chains cut by the grid edge

  // Polyline without the repeated closing point.
  std::span<const Point> vertices() const {
    return points.empty() ? std::span<const Point>{}
                          : std::span<const Point>(points.data(), points.size() - 1);
  }
};

/// Traces {u = a} by marching squares over the cell-centre lattice and returns
/// the longest closed component that separates E from F, oriented so that its
/// winding about E minus its winding about F is +1. Components cut by the
/// grid edge are discarded. Throws DomainError unless -1 < a < 1, and
/// LevelNotFound when no separating component exists.
LevelCurve extract_level(const PotentialField& field, double a);

struct JordanDiagnostics {
  bool closed = false;
  bool simple = false;
  int orientation = 0;  // +1 counterclockwise, -1 clockwise, 0 degenerate
  double signed_area = 0.0;
  int winding = 0;      // winding about E minus winding about F
  std::optional<std::pair<std::size_t, std::size_t>> crossing;  // first crossing edge pair
};

JordanDiagnostics validate_jordan(const LevelCurve& curve);

double polyline_length(std::span<const Point> points);

}  // namespace capq
