#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "capq/geometry.hpp"

namespace capq {

enum class ShapeKind { Disc, DiscComplement, Polygon, SlitSegment };

/// One piece of a continuum. A continuum (E or F) is the union of one or
/// more shapes; pieces that leave the grid are joined through infinity.
struct Shape {
  ShapeKind kind = ShapeKind::Disc;
  Point center{};               // Disc, DiscComplement
  double radius = 0.0;          // Disc, DiscComplement
  std::vector<Point> vertices;  // Polygon
  Point from{};                 // SlitSegment
  Point to{};                   // SlitSegment
  double half_width = 0.0;      // SlitSegment

  static Shape disc(Point center, double radius);
  // The closed exterior {|z - center| >= radius}, a continuum through infinity.
  static Shape disc_complement(Point center, double radius);
  static Shape polygon(std::vector<Point> vertices);
  static Shape slit(Point from, Point to, double half_width = 0.0);

  // Membership test for a cell centre on a grid of spacing h. Slits are
  // thickened to at least h/2 so they stay continua on the grid.
  bool contains(Point p, double h) const;
  bool unbounded() const { return kind == ShapeKind::DiscComplement; }
  Rect bounding_box() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

struct CapacitorSpec {
  std::vector<Shape> shape_E;
  std::vector<Shape> shape_F;
  Rect grid_bounds;
  int resolution = 0;  // cells per side

  friend bool operator==(const CapacitorSpec&, const CapacitorSpec&) = default;
};

enum class CellClass : std::uint8_t { InteriorOmega, BoundaryE, BoundaryF, Outer };

/// Cell classification of a square grid, row-major with row j at
/// y = ymin + (j + 1/2) h and column i at x = xmin + (i + 1/2) h.
///
/// BoundaryE / BoundaryF hold every cell whose centre lies in E / F; they
/// carry the Dirichlet data. Outer cells are pockets of the complement
/// that do not join E to F; `outer_sign` records the continuum a pocket
/// touches (+1 E, -1 F, 0 neither) so it can be filled with a constant.
class GridMask {
 public:
  GridMask() = default;
  GridMask(int n, Rect bounds);

  int n() const { return n_; }
  double h() const { return h_; }
  const Rect& bounds() const { return bounds_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(i);
  }
  Point center(int i, int j) const {
    return {bounds_.xmin + (i + 0.5) * h_, bounds_.ymin + (j + 0.5) * h_};
  }
  CellClass at(int i, int j) const { return cells_[index(i, j)]; }
  CellClass at(std::size_t idx) const { return cells_[idx]; }
  void set(std::size_t idx, CellClass c) { cells_[idx] = c; }
  const std::vector<CellClass>& cells() const { return cells_; }

  std::int8_t outer_sign(std::size_t idx) const { return outer_sign_[idx]; }
  void set_outer_sign(std::size_t idx, std::int8_t s) { outer_sign_[idx] = s; }

  std::size_t count(CellClass c) const;

  // Centroid of the E cells. The anchors are the cell centres nearest each
  // continuum's centroid, or nullopt for a continuum through infinity. A
  // closed curve separates E from F exactly when its winding numbers about
  // the two anchors differ (a curve never winds about infinity).
  Point e_centroid{};
  std::optional<Point> e_anchor;
  std::optional<Point> f_anchor;

 private:
  int n_ = 0;
  double h_ = 0.0;
  Rect bounds_{};
  std::vector<CellClass> cells_;
  std::vector<std::int8_t> outer_sign_;
};

CapacitorSpec validate_spec(const CapacitorSpec& spec);
GridMask rasterize(const CapacitorSpec& spec);

// Number of 4-connected components of InteriorOmega cells.
int interior_component_count(const GridMask& mask);

}  // namespace capq
