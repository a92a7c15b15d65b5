#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "capq/capacitor.hpp"

namespace capq {

using cplx = std::complex<double>;

/// Five-stage conformal map from A(r, 1/r) onto
///   Omega0 = C \ ([-1, 1] U {iy : |y| >= c}),  c = (m^(-1/2) - m^(1/2)) / 2.
///
///   1. z -> r z                      A(r, 1/r)   -> A(r^2, 1)
///   2. z -> (z + 1/z) / 2            A(r^2, 1)   -> ellipse \ [-1, 1]
///   3. z -> sqrt(m) sn(2K(m)/pi asin z, m)        -> D \ [-sqrt m, sqrt m]
///   4. z -> 1/z                                   -> exterior of D minus two rays
///   5. z -> (i/2)(z - 1/z)                        -> Omega0
///
/// The ellipse has foci +-1 and semi-axes summing to 1/r^2, and m (a
/// modulus, not a parameter) solves (pi/4) K'(m)/K(m) = log(1/r^2). The
/// inner circle |z| = r lands on [-1, 1]; the outer circle on the two rays.
struct MapChain {
  double r = 0.0;
  double m = 0.0;
  double K = 0.0;  // K(m)

  double slit_half_length() const;  // sqrt(m), the disk slit after stage 3
  double ray_gap() const;           // c, the distance from 0 to each ray tip
  double modulus() const;           // 2 log(1/r)
};

inline constexpr int kChainStages = 5;
std::string_view chain_stage_name(int stage);  // 1-based

/// Throws DomainError unless 0 < r < 1; propagates NonConvergence.
MapChain build_chain(double r);

/// Images after each stage: [0] is the input, [5] the point of Omega0.
/// Throws DomainViolation, tagged with the stage index, when the input is
/// not strictly inside the annulus, when stage 3 would be evaluated within
/// 1e-6 of a slit tip, or when the stage-3 image leaves the unit disk.
std::array<cplx, kChainStages + 1> trace_chain(const MapChain& chain, cplx z);
cplx evaluate_chain(const MapChain& chain, cplx z);

/// Largest deviation of boundary images from their target sets, sampling
/// `samples` points per boundary circle: | |w| - 1 | on the inner circle and
/// the distance to [-sqrt m, sqrt m] on the outer circle (after stage 3).
struct ChainBoundaryCheck {
  double inner_residual = 0.0;
  double outer_residual = 0.0;
};
ChainBoundaryCheck check_chain_boundary(const MapChain& chain, int samples);

/// Omega0 as a capacitor: E = [-1, 1], F = the two rays, truncated to the
/// square [-half_width, half_width]^2.
CapacitorSpec omega0_spec(const MapChain& chain, double half_width, int resolution);

/// Piecewise radial power map of A(r, 1/r) that fixes both boundary circles
/// pointwise and carries |z| = s onto |z| = t:
///   |z| <= s: rho -> r (rho/r)^alpha_inner,  alpha_inner = log(t/r) / log(s/r)
///   |z| >= s: rho -> (1/r) (r rho)^alpha_outer,
///             alpha_outer = log(1/(r t)) / log(1/(r s)).
struct AnnulusSelfMap {
  double r = 0.0, s = 0.0, t = 0.0;
  double alpha_inner = 1.0;
  double alpha_outer = 1.0;
  double claimed_K = 1.0;  // max(alpha_inner, alpha_outer), the capacity-quotient bound
  double true_K = 1.0;     // max over both pieces of max(alpha, 1/alpha)

  cplx operator()(cplx z) const;
};

/// Throws DomainError unless 0 < r < 1 and r < s, t < 1/r.
AnnulusSelfMap radial_stretch(double r, double s, double t);

/// |Df|^2 / J from central differences of step h: the squared operator norm
/// of the Jacobian over its determinant. Requires 0 < h < 1e-4 and z at
/// least 2h inside the annulus and 2h away from |z| = s (DomainError);
/// throws DegenerateJacobian if the determinant is not positive.
double pointwise_distortion(const AnnulusSelfMap& map, cplx z, double h);

}  // namespace capq
