#include "capq/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace capq {

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool point_in_polygon(Point p, std::span<const Point> polygon, double perturbation) {
  // Direction (1, sqrt(2)-1) never lines up with grid-aligned vertices.
  p.x += perturbation;
  p.y += perturbation * 0.41421356237309503;
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = polygon[i];
    const Point b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

namespace {

int orientation(Point a, Point b, Point c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(Point a, Point b, Point p, double eps) {
  return std::min(a.x, b.x) - eps <= p.x && p.x <= std::max(a.x, b.x) + eps &&
         std::min(a.y, b.y) - eps <= p.y && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d, double eps) {
  const int o1 = orientation(a, b, c, eps);
  const int o2 = orientation(a, b, d, eps);
  const int o3 = orientation(c, d, a, eps);
  const int o4 = orientation(c, d, b, eps);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c, eps)) return true;
  if (o2 == 0 && on_segment(a, b, d, eps)) return true;
  if (o3 == 0 && on_segment(c, d, a, eps)) return true;
  if (o4 == 0 && on_segment(c, d, b, eps)) return true;
  return false;
}

double signed_area(std::span<const Point> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

int winding_number(std::span<const Point> polygon, Point p) {
  int wn = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    const double side = cross(b - a, p - a);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else {
      if (b.y <= p.y && side < 0) --wn;
    }
  }
  return wn;
}

std::optional<std::pair<std::size_t, std::size_t>> first_self_intersection(
    std::span<const Point> polygon, double eps) {
  const std::size_t n = polygon.size();
  if (n < 4) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    // Bounding-box prefilter keeps the O(n^2) scan cheap in practice.
    const double axmin = std::min(a.x, b.x) - eps, axmax = std::max(a.x, b.x) + eps;
    const double aymin = std::min(a.y, b.y) - eps, aymax = std::max(a.y, b.y) + eps;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // edges sharing the closing vertex
      const Point c = polygon[j];
      const Point d = polygon[(j + 1) % n];
      if (std::max(c.x, d.x) < axmin || std::min(c.x, d.x) > axmax ||
          std::max(c.y, d.y) < aymin || std::min(c.y, d.y) > aymax) {
        continue;
      }
      if (segments_intersect(a, b, c, d, eps)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace capq
