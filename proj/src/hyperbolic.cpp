#include "capq/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "capq/errors.hpp"

namespace capq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_radius(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::DomainError, std::string(what) + " needs 0 < r < 1");
  }
}

void require_length(double ell, const char* what) {
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw Error(ErrorCode::DomainError, std::string(what) + " needs a finite length > 0");
  }
}

}  // namespace

double hyperbolic_density(double r, std::complex<double> z) {
  require_radius(r, "hyperbolic_density");
  const double rho = std::abs(z);
  if (!(rho > r && rho < 1.0 / r)) {
    throw Error(ErrorCode::DomainError, "hyperbolic_density needs r < |z| < 1/r");
  }
  const double L = std::log(1.0 / r);
  return kPi / (2.0 * L) / (rho * std::cos(kPi * std::log(rho) / (2.0 * L)));
}

double geodesic_length(double r) {
  require_radius(r, "geodesic_length");
  return kPi * kPi / std::log(1.0 / r);
}

double length_to_r(double ell) {
  require_length(ell, "length_to_r");
  return std::exp(-kPi * kPi / ell);
}

double arccos_tanh(double x) { return 2.0 * std::atan(std::exp(-x)); }

double collar_width(double ell) {
  require_length(ell, "collar_width");
  return std::asinh(1.0 / std::sinh(0.5 * ell));
}

double collar_log_inverse_radius(double ell) {
  require_length(ell, "collar_radius");
  return 2.0 * kPi / ell * arccos_tanh(0.5 * ell);
}

double collar_radius(double ell) { return std::exp(-collar_log_inverse_radius(ell)); }

double radial_distance(double r, double rho1, double rho2) {
  require_radius(r, "radial_distance");
  if (!(rho1 > r && rho1 <= rho2 && rho2 < 1.0 / r)) {
    throw Error(ErrorCode::DomainError, "radial_distance needs r < rho1 <= rho2 < 1/r");
  }
  if (rho1 == rho2) return 0.0;
  const double L = std::log(1.0 / r);
  // With x = log t the density times dt becomes pi / (2L) sec(pi x / (2L)) dx.
  auto integrand = [L](double x) { return kPi / (2.0 * L) / std::cos(kPi * x / (2.0 * L)); };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, std::log(rho1), std::log(rho2), 15, 1e-12, &error);
  if (!(error <= 1e-8 * std::max(1.0, std::abs(value))) || !std::isfinite(value)) {
    throw Error(ErrorCode::QuadratureFailure,
                "radial quadrature error estimate " + std::to_string(error) +
                    " exceeds 1e-8 relative");
  }
  return value;
}

CollarResult collar(double ell) {
  require_length(ell, "collar");
  return {ell, length_to_r(ell), collar_radius(ell), collar_width(ell)};
}

CollarResult collar_from_radius(double r) { return collar(geodesic_length(r)); }

}  // namespace capq
