#include "capq/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "capq/errors.hpp"

namespace capq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLandenDepth = 32;
constexpr double kTinyModulus = 1e-8;

double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

void require_modulus(double k, const char* what) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw Error(ErrorCode::DomainError,
                std::string(what) + " needs a modulus in [0, 1), got " + std::to_string(k));
  }
}

}  // namespace

double arithmetic_geometric_mean(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
  }
  return 0.5 * (a + b);
}

double elliptic_K(double k) {
  require_modulus(k, "elliptic_K");
  return kPi / (2.0 * arithmetic_geometric_mean(1.0, complementary(k)));
}

double elliptic_K_prime(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw Error(ErrorCode::DomainError, "elliptic_K_prime needs 0 < k < 1");
  }
  return kPi / (2.0 * arithmetic_geometric_mean(1.0, k));
}

JacobiTriple jacobi_elliptic(double u, double k) {
  require_modulus(k, "jacobi_elliptic");
  if (k < kTinyModulus) {
    // sn = sin u - (k^2/4)(u - sin u cos u) cos u + O(k^4)
    const double s = std::sin(u), c = std::cos(u);
    const double corr = 0.25 * k * k * (u - s * c);
    return {s - corr * c, c + corr * s, 1.0 - 0.5 * k * k * s * s};
  }
  const double kc = complementary(k);
  if (kc < kTinyModulus) {
    const double t = std::tanh(u), sech = 1.0 / std::cosh(u);
    return {t, sech, sech};
  }

  std::array<double, kLandenDepth + 1> a{}, c{};
  a[0] = 1.0;
  double b = kc;
  c[0] = k;
  int depth = 0;
  while (std::abs(c[depth]) > std::numeric_limits<double>::epsilon() * a[depth]) {
    if (depth == kLandenDepth) {
      throw Error(ErrorCode::NonConvergence,
                  "Landen recursion did not contract within 32 steps");
    }
    const double an = 0.5 * (a[depth] + b);
    const double bn = std::sqrt(a[depth] * b);
    c[depth + 1] = 0.5 * (a[depth] - b);
    a[depth + 1] = an;
    b = bn;
    ++depth;
  }
  double phi = std::ldexp(a[depth] * u, depth);
  for (int n = depth; n > 0; --n) {
    phi = 0.5 * (phi + std::asin(c[n] / a[n] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  return {sn, std::cos(phi), std::sqrt(1.0 - k * k * sn * sn)};
}

std::complex<double> jacobi_sn(std::complex<double> u, double k) {
  require_modulus(k, "jacobi_sn");
  const JacobiTriple re = jacobi_elliptic(u.real(), k);
  if (u.imag() == 0.0) return {re.sn, 0.0};
  const double kc = complementary(k);
  // The complementary modulus of the imaginary part may be exactly 1 (k = 0).
  JacobiTriple im;
  if (kc >= 1.0) {
    const double y = u.imag();
    im = {std::tanh(y), 1.0 / std::cosh(y), 1.0 / std::cosh(y)};
  } else {
    im = jacobi_elliptic(u.imag(), kc);
  }
  const double denom = im.cn * im.cn + k * k * re.sn * re.sn * im.sn * im.sn;
  if (denom == 0.0) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  return {re.sn * im.dn / denom, re.cn * re.dn * im.sn * im.cn / denom};
}

double groetzsch_mu(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::DomainError, "groetzsch_mu needs 0 < r < 1");
  }
  // K'(r)/K(r) = AGM(1, r') / AGM(1, r)
  return 0.5 * kPi * arithmetic_geometric_mean(1.0, complementary(r)) /
         arithmetic_geometric_mean(1.0, r);
}

double teichmuller_ring_modulus() { return 2.0 * groetzsch_mu(std::pow(2.0, -0.25)); }

double solve_modulus_equation(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::DomainError, "solve_modulus_equation needs 0 < r < 1");
  }
  const double target = -2.0 * std::log(r);
  auto excess = [target](double m) {
    return 0.25 * kPi * arithmetic_geometric_mean(1.0, complementary(m)) /
               arithmetic_geometric_mean(1.0, m) -
           target;
  };
  double lo = 0.0, hi = 1.0;
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0) || hi - lo > 1e-12 * hi) {
    throw Error(ErrorCode::NonConvergence,
                "modulus equation bisection did not reach 1e-12 in 200 steps");
  }
  return 0.5 * (lo + hi);
}

}  // namespace capq
