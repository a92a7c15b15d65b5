#include "capq/capacitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "capq/errors.hpp"
#include "capq/parallel.hpp"

namespace capq {

Shape Shape::disc(Point center, double radius) {
  Shape s;
  s.kind = ShapeKind::Disc;
  s.center = center;
  s.radius = radius;
  return s;
}

Shape Shape::disc_complement(Point center, double radius) {
  Shape s;
  s.kind = ShapeKind::DiscComplement;
  s.center = center;
  s.radius = radius;
  return s;
}

Shape Shape::polygon(std::vector<Point> vertices) {
  Shape s;
  s.kind = ShapeKind::Polygon;
  s.vertices = std::move(vertices);
  return s;
}

Shape Shape::slit(Point from, Point to, double half_width) {
  Shape s;
  s.kind = ShapeKind::SlitSegment;
  s.from = from;
  s.to = to;
  s.half_width = half_width;
  return s;
}

bool Shape::contains(Point p, double h) const {
  switch (kind) {
    case ShapeKind::Disc:
      return distance(p, center) <= radius;
    case ShapeKind::DiscComplement:
      return distance(p, center) >= radius;
    case ShapeKind::Polygon:
      return point_in_polygon(p, vertices, 1e-12 * h);
    case ShapeKind::SlitSegment: {
      // A cell whose centre sits exactly h/2 from the slit counts as covered.
      const double reach = std::max(half_width, 0.5 * h) * (1.0 + 1e-9);
      return segment_distance(p, from, to) <= reach;
    }
  }
  return false;
}

Rect Shape::bounding_box() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case ShapeKind::Disc:
      return {center.x - radius, center.y - radius, center.x + radius, center.y + radius};
    case ShapeKind::DiscComplement:
      return {-inf, -inf, inf, inf};
    case ShapeKind::Polygon: {
      Rect r{inf, inf, -inf, -inf};
      for (const Point& v : vertices) {
        r.xmin = std::min(r.xmin, v.x);
        r.ymin = std::min(r.ymin, v.y);
        r.xmax = std::max(r.xmax, v.x);
        r.ymax = std::max(r.ymax, v.y);
      }
      return r;
    }
    case ShapeKind::SlitSegment:
      return {std::min(from.x, to.x) - half_width, std::min(from.y, to.y) - half_width,
              std::max(from.x, to.x) + half_width, std::max(from.y, to.y) + half_width};
  }
  return {};
}

GridMask::GridMask(int n, Rect bounds)
    : n_(n),
      h_(bounds.width() / n),
      bounds_(bounds),
      cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
             CellClass::InteriorOmega),
      outer_sign_(cells_.size(), 0) {}

std::size_t GridMask::count(CellClass c) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), c));
}

namespace {

const char* role_name(bool is_e) { return is_e ? "E" : "F"; }

void check_shape(const Shape& s, const Rect& bounds, bool is_e) {
  const std::string who = std::string("shape in continuum ") + role_name(is_e);
  switch (s.kind) {
    case ShapeKind::Disc:
    case ShapeKind::DiscComplement: {
      if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
        throw Error(ErrorCode::DegenerateShape, who + " has non-positive radius");
      }
      break;
    }
    case ShapeKind::Polygon: {
      if (s.vertices.size() < 3) {
        throw Error(ErrorCode::DegenerateShape, who + " has fewer than 3 vertices");
      }
      const Rect box = s.bounding_box();
      const double scale = std::max(box.width(), box.height());
      if (!(std::abs(signed_area(s.vertices)) > 1e-14 * scale * scale)) {
        throw Error(ErrorCode::DegenerateShape, who + " is a zero-area polygon");
      }
      if (first_self_intersection(s.vertices, 0.0)) {
        throw Error(ErrorCode::DegenerateShape, who + " is not a simple polygon");
      }
      break;
    }
    case ShapeKind::SlitSegment: {
      if (!(s.half_width >= 0.0)) {
        throw Error(ErrorCode::DegenerateShape, who + " has negative half-width");
      }
      if (s.from == s.to) {
        throw Error(ErrorCode::DegenerateShape, who + " is a zero-length slit");
      }
      break;
    }
  }

  switch (s.kind) {
    case ShapeKind::Disc:
    case ShapeKind::Polygon:
      if (!bounds.contains(s.bounding_box())) {
        throw Error(ErrorCode::OutOfBounds, who + " is not inside grid_bounds");
      }
      break;
    case ShapeKind::SlitSegment:
      // Slits may run off the grid: they model rays out to infinity.
      if (!bounds.intersects(s.bounding_box())) {
        throw Error(ErrorCode::OutOfBounds, who + " does not meet grid_bounds");
      }
      break;
    case ShapeKind::DiscComplement: {
      const Point corners[] = {{bounds.xmin, bounds.ymin}, {bounds.xmax, bounds.ymin},
                               {bounds.xmin, bounds.ymax}, {bounds.xmax, bounds.ymax}};
      const bool reaches = std::any_of(std::begin(corners), std::end(corners),
                                       [&](Point c) { return distance(c, s.center) > s.radius; });
      if (!reaches) {
        throw Error(ErrorCode::OutOfBounds, who + " lies entirely outside grid_bounds");
      }
      break;
    }
  }
}

void check_structure(const CapacitorSpec& spec) {
  const Rect& b = spec.grid_bounds;
  if (!(b.width() > 0.0) || !(b.height() > 0.0) || !std::isfinite(b.width()) ||
      !std::isfinite(b.height())) {
    throw Error(ErrorCode::InvalidSpec, "grid_bounds must have positive finite extent");
  }
  if (std::abs(b.width() - b.height()) > 1e-9 * b.width()) {
    throw Error(ErrorCode::InvalidSpec, "grid_bounds must be square (cells are square)");
  }
  if (spec.resolution < 4) {
    throw Error(ErrorCode::InvalidSpec, "resolution must be at least 4 cells per side");
  }
  if (spec.shape_E.empty() || spec.shape_F.empty()) {
    throw Error(ErrorCode::InvalidSpec, "both continua E and F need at least one shape");
  }
  int complements = 0;
  for (const Shape& s : spec.shape_E) {
    check_shape(s, b, true);
    complements += s.unbounded() ? 1 : 0;
  }
  for (const Shape& s : spec.shape_F) {
    check_shape(s, b, false);
    complements += s.unbounded() ? 1 : 0;
  }
  if (complements > 1) {
    throw Error(ErrorCode::InvalidSpec, "at most one disc_complement shape is allowed");
  }
}

// Marks cells covered by `shape`; returns the number of cells it covers.
std::size_t paint(const Shape& shape, const GridMask& grid, std::vector<std::uint8_t>& layer) {
  const int n = grid.n();
  const double h = grid.h();
  const Rect& b = grid.bounds();
  int i0 = 0, i1 = n - 1, j0 = 0, j1 = n - 1;
  if (!shape.unbounded()) {
    const Rect box = shape.bounding_box();
    const double pad = h;
    auto cell = [n](double v) { return static_cast<int>(std::clamp(v, -1.0, double(n))); };
    i0 = std::max(0, cell(std::floor((box.xmin - pad - b.xmin) / h)));
    i1 = std::min(n - 1, cell(std::ceil((box.xmax + pad - b.xmin) / h)));
    j0 = std::max(0, cell(std::floor((box.ymin - pad - b.ymin) / h)));
    j1 = std::min(n - 1, cell(std::ceil((box.ymax + pad - b.ymin) / h)));
    if (i0 > i1 || j0 > j1) return 0;
  }
  const std::size_t rows = static_cast<std::size_t>(j1 - j0 + 1);
  std::vector<std::size_t> row_hits(rows, 0);
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int j = j0 + static_cast<int>(r);
      std::size_t hits = 0;
      for (int i = i0; i <= i1; ++i) {
        if (shape.contains(grid.center(i, j), h)) {
          layer[grid.index(i, j)] = 1;
          ++hits;
        }
      }
      row_hits[r] = hits;
    }
  });
  return std::accumulate(row_hits.begin(), row_hits.end(), std::size_t{0});
}

struct Layers {
  std::vector<std::uint8_t> e;
  std::vector<std::uint8_t> f;
};

Layers classify(const CapacitorSpec& spec, const GridMask& grid) {
  Layers layers{std::vector<std::uint8_t>(grid.size(), 0),
                std::vector<std::uint8_t>(grid.size(), 0)};
  for (int role = 0; role < 2; ++role) {
    const bool is_e = role == 0;
    const auto& shapes = is_e ? spec.shape_E : spec.shape_F;
    auto& layer = is_e ? layers.e : layers.f;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      if (paint(shapes[k], grid, layer) == 0) {
        throw Error(ErrorCode::ResolutionTooCoarse,
                    std::string("shape ") + std::to_string(k) + " of continuum " +
                        role_name(is_e) + " covers no grid cell");
      }
    }
  }
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (layers.e[idx] && layers.f[idx]) {
      throw Error(ErrorCode::OverlappingContinua, "E and F share grid cells");
    }
  }
  return layers;
}

// Chebyshev dilation by `radius` cells, done as two separable passes.
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& src, int n, int radius) {
  std::vector<std::uint8_t> rows(src.size(), 0), out(src.size(), 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!src[static_cast<std::size_t>(j) * n + i]) continue;
      for (int di = -radius; di <= radius; ++di) {
        const int ii = i + di;
        if (ii >= 0 && ii < n) rows[static_cast<std::size_t>(j) * n + ii] = 1;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!rows[static_cast<std::size_t>(j) * n + i]) continue;
      for (int dj = -radius; dj <= radius; ++dj) {
        const int jj = j + dj;
        if (jj >= 0 && jj < n) out[static_cast<std::size_t>(jj) * n + i] = 1;
      }
    }
  }
  return out;
}

// 8-connected pieces of a continuum; cells on the grid border are joined
// through the point at infinity.
int continuum_pieces(const std::vector<std::uint8_t>& layer, int n) {
  std::vector<std::uint8_t> seen(layer.size(), 0);
  std::vector<std::size_t> stack;
  int pieces = 0;
  auto flood = [&](std::vector<std::size_t> seeds) {
    for (std::size_t s : seeds) seen[s] = 1;
    stack = std::move(seeds);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(idx % n);
      const int j = static_cast<int>(idx / n);
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          const std::size_t k = static_cast<std::size_t>(jj) * n + ii;
          if (layer[k] && !seen[k]) {
            seen[k] = 1;
            stack.push_back(k);
          }
        }
      }
    }
  };
  std::vector<std::size_t> border;
  for (int k = 0; k < n; ++k) {
    const std::size_t cand[] = {static_cast<std::size_t>(k),
                                static_cast<std::size_t>(n - 1) * n + k,
                                static_cast<std::size_t>(k) * n,
                                static_cast<std::size_t>(k) * n + (n - 1)};
    for (std::size_t c : cand) {
      if (layer[c] && !seen[c]) {
        seen[c] = 1;
        border.push_back(c);
      }
    }
  }
  if (!border.empty()) {
    flood(border);
    ++pieces;
  }
  for (std::size_t idx = 0; idx < layer.size(); ++idx) {
    if (layer[idx] && !seen[idx]) {
      flood({idx});
      ++pieces;
    }
  }
  return pieces;
}

Point centroid(const GridMask& mask, const std::vector<std::uint8_t>& layer) {
  double cx = 0.0, cy = 0.0;
  std::size_t count = 0;
  for (int j = 0; j < mask.n(); ++j) {
    for (int i = 0; i < mask.n(); ++i) {
      if (!layer[mask.index(i, j)]) continue;
      const Point c = mask.center(i, j);
      cx += c.x;
      cy += c.y;
      ++count;
    }
  }
  return {cx / static_cast<double>(count), cy / static_cast<double>(count)};
}

Point nearest_cell(const GridMask& mask, const std::vector<std::uint8_t>& layer, Point target) {
  double best = std::numeric_limits<double>::infinity();
  Point anchor{};
  for (int j = 0; j < mask.n(); ++j) {
    for (int i = 0; i < mask.n(); ++i) {
      if (!layer[mask.index(i, j)]) continue;
      const double d = distance(mask.center(i, j), target);
      if (d < best) {
        best = d;
        anchor = mask.center(i, j);
      }
    }
  }
  return anchor;
}

// A continuum contains infinity when it has a disc_complement piece or a
// slit that runs off the grid.
bool reaches_infinity(const std::vector<Shape>& shapes, const Rect& bounds) {
  return std::any_of(shapes.begin(), shapes.end(), [&](const Shape& s) {
    return s.unbounded() ||
           (s.kind == ShapeKind::SlitSegment && !bounds.contains(s.bounding_box()));
  });
}

}  // namespace

CapacitorSpec validate_spec(const CapacitorSpec& spec) {
  check_structure(spec);
  const GridMask grid(spec.resolution, spec.grid_bounds);
  classify(spec, grid);
  return spec;
}

GridMask rasterize(const CapacitorSpec& spec) {
  check_structure(spec);
  GridMask mask(spec.resolution, spec.grid_bounds);
  const Layers layers = classify(spec, mask);
  const int n = mask.n();

  const auto near_f = dilate(layers.f, n, 2);
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (layers.e[idx] && near_f[idx]) {
      throw Error(ErrorCode::ResolutionTooCoarse,
                  "E and F come within two cells of each other; refine the grid");
    }
  }
  for (int role = 0; role < 2; ++role) {
    const auto& layer = role == 0 ? layers.e : layers.f;
    const int pieces = continuum_pieces(layer, n);
    if (pieces != 1) {
      throw Error(ErrorCode::InvalidSpec,
                  std::string("continuum ") + role_name(role == 0) + " splits into " +
                      std::to_string(pieces) + " pieces on the grid");
    }
  }

  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (layers.e[idx]) {
      mask.set(idx, CellClass::BoundaryE);
    } else if (layers.f[idx]) {
      mask.set(idx, CellClass::BoundaryF);
    }
  }
  mask.e_centroid = centroid(mask, layers.e);
  if (!reaches_infinity(spec.shape_E, spec.grid_bounds)) {
    mask.e_anchor = nearest_cell(mask, layers.e, mask.e_centroid);
  }
  if (!reaches_infinity(spec.shape_F, spec.grid_bounds)) {
    mask.f_anchor = nearest_cell(mask, layers.f, centroid(mask, layers.f));
  }

  // Components of the complement: those adjacent to both continua carry the
  // field, everything else is an Outer pocket.
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<std::size_t> component;
  std::vector<std::size_t> stack;
  const int di[] = {1, -1, 0, 0};
  const int dj[] = {0, 0, 1, -1};
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (seen[start] || layers.e[start] || layers.f[start]) continue;
    component.clear();
    bool touches_e = false, touches_f = false;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      component.push_back(idx);
      const int i = static_cast<int>(idx % n);
      const int j = static_cast<int>(idx / n);
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
        const std::size_t nb = mask.index(ii, jj);
        if (layers.e[nb]) {
          touches_e = true;
        } else if (layers.f[nb]) {
          touches_f = true;
        } else if (!seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    if (touches_e && touches_f) continue;  // stays InteriorOmega
    const std::int8_t sign = touches_e ? 1 : (touches_f ? -1 : 0);
    for (std::size_t idx : component) {
      mask.set(idx, CellClass::Outer);
      mask.set_outer_sign(idx, sign);
    }
  }
  return mask;
}

int interior_component_count(const GridMask& mask) {
  const int n = mask.n();
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<std::size_t> stack;
  int components = 0;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (seen[start] || mask.at(start) != CellClass::InteriorOmega) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(idx % n);
      const int j = static_cast<int>(idx / n);
      const std::pair<int, int> nbrs[] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (auto [ii, jj] : nbrs) {
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
        const std::size_t nb = mask.index(ii, jj);
        if (!seen[nb] && mask.at(nb) == CellClass::InteriorOmega) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
  }
  return components;
}

}  // namespace capq
