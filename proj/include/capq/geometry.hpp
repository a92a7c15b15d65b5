#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace capq {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Point p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  bool intersects(const Rect& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
  bool contains(const Rect& o) const {
    return o.xmin >= xmin && o.xmax <= xmax && o.ymin >= ymin && o.ymax <= ymax;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

double segment_distance(Point p, Point a, Point b);

// Even-odd rule. The query point is nudged by `perturbation` along a fixed
// irrational direction so that ties on edges and vertices resolve the same
// way on every call.
bool point_in_polygon(Point p, std::span<const Point> polygon, double perturbation);

// True when the closed segments [a,b] and [c,d] share a point (touching and
// collinear overlap included). `eps` is an absolute tolerance on the
// orientation tests.
bool segments_intersect(Point a, Point b, Point c, Point d, double eps = 0.0);

// Signed shoelace area of a polygon; the closing edge is implied.
double signed_area(std::span<const Point> polygon);

// Winding number of a closed polyline about p (the closing edge is implied).
int winding_number(std::span<const Point> polygon, Point p);

// First intersecting pair of non-adjacent edges of a closed polygon, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_self_intersection(
    std::span<const Point> polygon, double eps);

}  // namespace capq
