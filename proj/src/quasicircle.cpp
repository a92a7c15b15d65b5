#include "capq/quasicircle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "capq/errors.hpp"

namespace capq {

namespace {

std::size_t distinct_count(std::span<const Point> pts) {
  std::vector<Point> v(pts.begin(), pts.end());
  auto less = [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  std::sort(v.begin(), v.end(), less);
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

double curve_diameter(std::span<const Point> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::DegenerateCurve, "diameter needs at least two points");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

TurningReport turning_constant(std::span<const Point> vertices, std::size_t decimation) {
  if (decimation < 1) throw Error(ErrorCode::DomainError, "decimation must be at least 1");
  if (distinct_count(vertices) < 4) {
    throw Error(ErrorCode::DegenerateCurve, "turning constant needs at least 4 distinct points");
  }
  std::vector<Point> p;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < vertices.size(); i += decimation) {
    p.push_back(vertices[i]);
    origin.push_back(i);
  }
  const std::size_t m = p.size();
  const double skip = 1e-6 * curve_diameter(vertices);

  // d[len * m + i] = diameter of the cyclic run p[i], ..., p[i + len].
  std::vector<double> d(m * m, 0.0);
  for (std::size_t len = 1; len < m; ++len) {
    const double* prev = &d[(len - 1) * m];
    double* cur = &d[len * m];
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t next = (i + 1) % m;
      cur[i] = std::max({prev[i], prev[next], distance(p[i], p[(i + len) % m])});
    }
  }

  TurningReport rep;
  rep.samples = m;
  rep.decimation = decimation;
  bool found = false;
  std::size_t best_lo = 0, best_hi = 0;
  for (std::size_t len = 1; len <= m / 2; ++len) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + len) % m;
      if (2 * len == m && i >= len) continue;  // (i, i + m/2) seen from the other end
      const double chord = distance(p[i], p[j]);
      if (chord < skip) continue;
      const double arc = std::min(d[len * m + i], d[(m - len) * m + j]);
      const double ratio = arc / chord;
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      const bool better = !found || ratio > rep.constant ||
                          (ratio == rep.constant && (lo < best_lo || (lo == best_lo && hi < best_hi)));
      if (better) {
        found = true;
        rep.constant = ratio;
        best_lo = lo;
        best_hi = hi;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::DegenerateCurve, "no sampled pair is farther apart than 1e-6 diam");
  }
  rep.witness_first = origin[best_lo];
  rep.witness_second = origin[best_hi];
  return rep;
}

TurningReport turning_constant(const LevelCurve& curve, std::size_t decimation) {
  return turning_constant(curve.vertices(), decimation);
}

}  // namespace capq
