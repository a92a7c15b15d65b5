#pragma once

#include <complex>

namespace capq {

// Hyperbolic geometry of the symmetric annulus A(r, 1/r), 0 < r < 1.

/// Density pi / (2 log(1/r)) / (|z| cos(pi log|z| / (2 log(1/r)))).
/// Throws DomainError unless 0 < r < 1 and r < |z| < 1/r.
double hyperbolic_density(double r, std::complex<double> z);

/// Length of the core geodesic |z| = 1: pi^2 / log(1/r).
double geodesic_length(double r);
/// Inverse of geodesic_length: exp(-pi^2 / ell).
double length_to_r(double ell);

/// arccos(tanh(x)) evaluated as 2 atan(exp(-x)), exact for all x >= 0 and
/// free of the cancellation arccos suffers near 1.
double arccos_tanh(double x);

/// Collar half-width delta0 with cosh(2 delta0) = 1 + 2 / sinh^2(ell/2),
/// evaluated as asinh(1 / sinh(ell/2)).
double collar_width(double ell);

/// log(1/r0) = (2 pi / ell) arccos(tanh(ell/2)).
double collar_log_inverse_radius(double ell);
/// Collar radius r0 = exp(-collar_log_inverse_radius(ell)).
double collar_radius(double ell);

/// Hyperbolic length of the radial segment rho1 <= |z| <= rho2 in A(r, 1/r),
/// by adaptive Gauss-Kronrod quadrature in log |z|. Throws DomainError unless
/// r < rho1 <= rho2 < 1/r and QuadratureFailure if the error estimate
/// exceeds 1e-8 relative to max(1, result).
double radial_distance(double r, double rho1, double rho2);

struct CollarResult {
  double ell = 0.0;
  double r = 0.0;
  double r0 = 0.0;
  double delta0 = 0.0;
};

CollarResult collar(double ell);
CollarResult collar_from_radius(double r);

}  // namespace capq
