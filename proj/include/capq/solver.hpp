#pragma once

#include <complex>
#include <span>
#include <vector>

#include "capq/capacitor.hpp"

namespace capq {

/// Discrete extremal potential on a rasterized capacitor.
///
/// `capacity` is the conformal modulus 8*pi / D, where D is the discrete
/// Dirichlet energy. For a round annulus A(r, R) this is log(R/r), the
/// normalisation under which the annulus, Teichmüller-ring and bound
/// formulas of this library are stated. `energy_capacity` is D / (4*pi),
/// the raw variational quantity; the two satisfy capacity * energy_capacity = 2.
struct PotentialField {
  GridMask mask;
  std::vector<double> values;  // one per cell, row-major
  double capacity = 0.0;
  double dirichlet_energy = 0.0;
  double energy_capacity = 0.0;
  double residual = 0.0;       // final relative residual ||b - Ax|| / ||b||
  int iterations = 0;
  bool unreliable = false;     // energy_capacity above 1e3: continua nearly touch

  double value(int i, int j) const { return values[mask.index(i, j)]; }
  // Bilinear interpolation between cell centres (clamped at the grid edge).
  double interpolate(Point p) const;
};

struct SolveOptions {
  double tolerance = 1e-10;
  int max_iterations = 0;  // 0 selects 50 * resolution
};

/// Solves the 5-point Dirichlet problem u = +1 on E, -1 on F with zero
/// normal derivative on the grid edge, by conjugate gradients with a
/// modified incomplete Cholesky preconditioner.
PotentialField solve_potential(GridMask mask, const SolveOptions& options = {});
PotentialField solve_potential(GridMask mask, double tol);

/// Sum of squared differences across every grid face that touches the
/// interior (faces between two Dirichlet cells and insulated faces excluded),
/// accumulated with compensated summation.
double dirichlet_energy(const GridMask& mask, std::span<const double> values);

/// Conformal modulus 8*pi / D of a solved field.
double capacity(const PotentialField& field);

/// Exact extremal potential 2 log(|z|/r) / log(R/r) - 1 of A(r, R): -1 on
/// |z| = r, +1 on |z| = R. The level a is the circle of radius
/// r^((1-a)/2) R^((1+a)/2). Throws OutOfAnnulus when |z| is outside [r, R].
double annulus_extremal(double r, double R, std::complex<double> z);

}  // namespace capq
