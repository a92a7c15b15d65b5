#pragma once

#include <cstddef>
#include <span>

#include "capq/equipotential.hpp"
#include "capq/geometry.hpp"

namespace capq {

/// Three-point (bounded turning) constant of a closed curve:
///   C = max over sampled pairs z, w of min(diam a+, diam a-) / |z - w|,
/// where a+ and a- are the two subarcs between z and w.
struct TurningReport {
  double constant = 1.0;
  std::size_t witness_first = 0;   // indices into the input vertex list
  std::size_t witness_second = 0;
  std::size_t samples = 0;
  std::size_t decimation = 1;
};

/// `vertices` is the closed curve without its repeated closing point; every
/// `decimation`-th vertex is sampled. Subarc diameters come from an O(m^2)
/// interval table, so m = ceil(n / decimation) should stay in the low
/// thousands. Pairs closer than 1e-6 diam(curve) are skipped; ties go to the
/// lexicographically lowest witness pair. Throws DegenerateCurve for fewer
/// than 4 distinct vertices, DomainError for decimation < 1.
TurningReport turning_constant(std::span<const Point> vertices, std::size_t decimation = 1);
TurningReport turning_constant(const LevelCurve& curve, std::size_t decimation = 1);

/// Largest pairwise distance. Throws DegenerateCurve for fewer than 2 points.
double curve_diameter(std::span<const Point> points);

}  // namespace capq
