#pragma once

#include <complex>

namespace capq {

// All elliptic functions here use the modulus convention:
//   K(k) = \int_0^{pi/2} dθ / sqrt(1 - k^2 sin^2 θ),  k' = sqrt(1 - k^2).

double arithmetic_geometric_mean(double a, double b);

/// Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, k')).
double elliptic_K(double k);

/// Complementary integral K'(k) = K(k'). Evaluated as pi / (2 AGM(1, k)),
/// which avoids forming k' and stays accurate as k -> 0.
double elliptic_K_prime(double k);

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn, cn, dn for real argument by the descending Landen (AGM) scheme.
/// Moduli below 1e-8 use the circular limit and complementary moduli below
/// 1e-8 the hyperbolic limit. Throws NonConvergence if the recursion has not
/// contracted after 32 steps.
JacobiTriple jacobi_elliptic(double u, double k);

/// Jacobi sn for complex argument, assembled from real evaluations at
/// moduli k and k' with the imaginary-argument addition formula.
std::complex<double> jacobi_sn(std::complex<double> u, double k);

/// Grötzsch ring modulus mu(r) = (pi/2) K'(r) / K(r), 0 < r < 1.
double groetzsch_mu(double r);

/// Modulus of C \ ([0, 1/sqrt 2] U [1, inf)), computed as 2 mu(2^{-1/4})
/// after the affine normalisation z -> sqrt(2) z - 1.
double teichmuller_ring_modulus();

/// Solves (pi/4) K'(m) / K(m) = log(1/r^2) for m in (0, 1) by bisection.
double solve_modulus_equation(double r);

}  // namespace capq
