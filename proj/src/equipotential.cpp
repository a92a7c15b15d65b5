#include "capq/equipotential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "capq/errors.hpp"

namespace capq {

namespace {

constexpr std::int64_t kNone = -1;

// Edges of the cell-centre lattice. Horizontal edge (i,j)-(i+1,j) and
// vertical edge (i,j)-(i,j+1).
struct EdgeIds {
  std::int64_t n;
  std::int64_t horizontal(int i, int j) const { return j * (n - 1) + i; }
  std::int64_t vertical(int i, int j) const { return n * (n - 1) + j * n + i; }
};

struct Contour {
  const PotentialField& field;
  double level;
  EdgeIds ids;
  // Each lattice edge crossed by the level set joins at most two segments.
  std::unordered_map<std::int64_t, std::array<std::int64_t, 2>> links;

  void connect(std::int64_t e0, std::int64_t e1) {
    attach(e0, e1);
    attach(e1, e0);
  }

  void attach(std::int64_t from, std::int64_t to) {
    auto [it, fresh] = links.try_emplace(from, std::array<std::int64_t, 2>{kNone, kNone});
    auto& slot = it->second;
    (slot[0] == kNone ? slot[0] : slot[1]) = to;
  }

  Point crossing(std::int64_t e) const {
    const int n = field.mask.n();
    int i0, j0, i1, j1;
    if (e < ids.n * (ids.n - 1)) {
      j0 = static_cast<int>(e / (n - 1));
      i0 = static_cast<int>(e % (n - 1));
      i1 = i0 + 1;
      j1 = j0;
    } else {
      const std::int64_t v = e - ids.n * (ids.n - 1);
      j0 = static_cast<int>(v / n);
      i0 = static_cast<int>(v % n);
      i1 = i0;
      j1 = j0 + 1;
    }
    const double v0 = field.value(i0, j0), v1 = field.value(i1, j1);
    const double t = std::clamp((level - v0) / (v1 - v0), 0.0, 1.0);
    const Point p0 = field.mask.center(i0, j0), p1 = field.mask.center(i1, j1);
    return p0 + t * (p1 - p0);
  }
};

void march(Contour& c) {
  const int n = c.field.mask.n();
  const double a = c.level;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double v0 = c.field.value(i, j), v1 = c.field.value(i + 1, j);
      const double v2 = c.field.value(i + 1, j + 1), v3 = c.field.value(i, j + 1);
      const int code = (v0 > a ? 1 : 0) | (v1 > a ? 2 : 0) | (v2 > a ? 4 : 0) | (v3 > a ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const std::int64_t bottom = c.ids.horizontal(i, j), top = c.ids.horizontal(i, j + 1);
      const std::int64_t left = c.ids.vertical(i, j), right = c.ids.vertical(i + 1, j);
      if (code == 5 || code == 10) {
        // Saddle: the centre value decides which diagonal pair is joined.
        const bool centre_in = 0.25 * (v0 + v1 + v2 + v3) > a;
        const bool diagonal02_in = code == 5;
        if (centre_in == diagonal02_in) {
          c.connect(bottom, right);
          c.connect(top, left);
        } else {
          c.connect(left, bottom);
          c.connect(right, top);
        }
        continue;
      }
      std::array<std::int64_t, 2> ends{};
      int k = 0;
      if ((code & 1) != ((code >> 1) & 1)) ends[k++] = bottom;
      if (((code >> 1) & 1) != ((code >> 2) & 1)) ends[k++] = right;
      if (((code >> 2) & 1) != ((code >> 3) & 1)) ends[k++] = top;
      if (((code >> 3) & 1) != (code & 1)) ends[k++] = left;
      c.connect(ends[0], ends[1]);
    }
  }
}

// Follows links from `start` until the chain ends or returns to `start`.
std::vector<std::int64_t> walk(const Contour& c, std::int64_t start,
                               std::unordered_map<std::int64_t, bool>& visited, bool& closed) {
  std::vector<std::int64_t> chain{start};
  visited[start] = true;
  std::int64_t prev = kNone, cur = start;
  closed = false;
  while (true) {
    const auto& nb = c.links.at(cur);
    const std::int64_t next = nb[0] != prev ? nb[0] : nb[1];
    if (next == kNone) break;
    if (next == start) {
      closed = true;
      break;
    }
    if (visited[next]) break;
    visited[next] = true;
    chain.push_back(next);
    prev = cur;
    cur = next;
  }
  return chain;
}

int winding_or_zero(std::span<const Point> loop, const std::optional<Point>& anchor) {
  return anchor ? winding_number(loop, *anchor) : 0;
}

}  // namespace

double polyline_length(std::span<const Point> points) {
  double len = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) len += distance(points[i - 1], points[i]);
  return len;
}

LevelCurve extract_level(const PotentialField& field, double a) {
  if (!(a > -1.0 && a < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "level must lie strictly between -1 and 1, got " + std::to_string(a));
  }
  const GridMask& mask = field.mask;
  Contour c{field, a, EdgeIds{mask.n()}, {}};
  march(c);

  std::vector<std::int64_t> keys;
  keys.reserve(c.links.size());
  for (const auto& [e, nb] : c.links) keys.push_back(e);
  std::sort(keys.begin(), keys.end());

  std::unordered_map<std::int64_t, bool> visited;
  visited.reserve(keys.size());
  LevelCurve best;
  best.level = a;
  best.cell_size = mask.h();
  best.e_anchor = mask.e_anchor;
  best.f_anchor = mask.f_anchor;

  // Chains ending on the grid edge first, so the loop pass sees only cycles.
  for (std::int64_t e : keys) {
    if (visited[e] || c.links.at(e)[1] != kNone) continue;
    bool closed = false;
    walk(c, e, visited, closed);
    ++best.discarded_components;
  }
  for (std::int64_t e : keys) {
    if (visited[e]) continue;
    bool closed = false;
    const std::vector<std::int64_t> chain = walk(c, e, visited, closed);
    if (!closed) {
      ++best.discarded_components;
      continue;
    }
    std::vector<Point> pts;
    pts.reserve(chain.size() + 1);
    for (std::int64_t id : chain) {
      const Point p = c.crossing(id);
      if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
    }
    while (pts.size() > 1 && pts.back() == pts.front()) pts.pop_back();
    if (pts.size() < 3) {
      ++best.discarded_components;
      continue;
    }
    const int separation = winding_or_zero(pts, mask.e_anchor) - winding_or_zero(pts, mask.f_anchor);
    if (separation == 0) {
      ++best.discarded_components;
      continue;
    }
    ++best.separating_components;
    if (separation < 0) std::reverse(pts.begin(), pts.end());
    pts.push_back(pts.front());
    const double len = polyline_length(pts);
    if (len > best.arc_length) {
      best.points = std::move(pts);
      best.arc_length = len;
    }
  }
  if (best.separating_components == 0) {
    throw Error(ErrorCode::LevelNotFound,
                "no closed component of the level " + std::to_string(a) +
                    " separates E from F inside the grid (" +
                    std::to_string(best.discarded_components) + " discarded)");
  }
  // The losing separating loops count as discarded too.
  best.discarded_components += best.separating_components - 1;
  return best;
}

JordanDiagnostics validate_jordan(const LevelCurve& curve) {
  JordanDiagnostics d;
  const auto& pts = curve.points;
  d.closed = pts.size() >= 4 && pts.front() == pts.back();
  if (pts.size() < 2) return d;
  const std::span<const Point> loop =
      d.closed ? curve.vertices() : std::span<const Point>(pts.data(), pts.size());
  d.signed_area = signed_area(loop);
  d.orientation = d.signed_area > 0 ? 1 : (d.signed_area < 0 ? -1 : 0);
  const double h = curve.cell_size > 0 ? curve.cell_size : 1.0;
  d.crossing = first_self_intersection(loop, 1e-9 * h * h);
  d.simple = d.closed && !d.crossing.has_value();
  d.winding = winding_or_zero(loop, curve.e_anchor) - winding_or_zero(loop, curve.f_anchor);
  return d;
}

}  // namespace capq
