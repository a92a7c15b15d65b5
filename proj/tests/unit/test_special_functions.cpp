#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include "doctest.h"

#include "capq/errors.hpp"
#include "capq/special_functions.hpp"

using namespace capq;
using std::numbers::pi;

namespace {

// Direct quadrature of the defining integral.
double K_by_quadrature(double k) {
  auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 15, 1e-14);
}

}  // namespace

TEST_CASE("AGM of equal and classic arguments") {
  CHECK(arithmetic_geometric_mean(2.0, 2.0) == doctest::Approx(2.0));
  // Gauss's constant: AGM(1, sqrt 2) = 1.19814023473559220744
  CHECK(arithmetic_geometric_mean(1.0, std::sqrt(2.0)) ==
        doctest::Approx(1.19814023473559220744).epsilon(1e-15));
}

TEST_CASE("K(0) is pi/2 exactly") { CHECK(elliptic_K(0.0) == pi / 2); }

TEST_CASE("K matches Boost and direct quadrature") {
  for (double k = 0.05; k < 0.999; k += 0.05) {
    CHECK(elliptic_K(k) == doctest::Approx(boost::math::ellint_1(k)).epsilon(1e-13));
    CHECK(elliptic_K(k) == doctest::Approx(K_by_quadrature(k)).epsilon(1e-12));
  }
}

TEST_CASE("K prime is K of the complementary modulus, accurate for tiny k") {
  for (double k : {1e-3, 0.01, 0.3, 0.7, 0.99}) {
    // forming k' near 1 costs digits in the oracle, not in K'
    const double kc = std::sqrt(1.0 - k * k);
    CHECK(elliptic_K_prime(k) == doctest::Approx(boost::math::ellint_1(kc)).epsilon(1e-10));
  }
  // K'(k) ~ log(4/k) as k -> 0
  CHECK(elliptic_K_prime(1e-12) == doctest::Approx(std::log(4e12)).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(elliptic_K(1.0), Error);
  CHECK_THROWS_AS(elliptic_K(-0.1), Error);
  CHECK_THROWS_AS(elliptic_K_prime(0.0), Error);
  CHECK_THROWS_AS(groetzsch_mu(1.0), Error);
  CHECK_THROWS_AS(solve_modulus_equation(0.0), Error);
}

TEST_CASE("sn(K(k), k) = 1 and sn(u, 0) = sin u") {
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    CHECK(std::abs(jacobi_elliptic(elliptic_K(k), k).sn - 1.0) < 1e-9);
  }
  for (double u = -6.0; u <= 6.0; u += 0.37) {
    CHECK(std::abs(jacobi_elliptic(u, 0.0).sn - std::sin(u)) < 1e-12);
  }
}

TEST_CASE("Jacobi functions match Boost and satisfy the Pythagorean identities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ku(0.0, 0.999), uu(-10.0, 10.0);
  for (int t = 0; t < 500; ++t) {
    const double k = ku(rng), u = uu(rng);
    const JacobiTriple j = jacobi_elliptic(u, k);
    double cn = 0, dn = 0;
    const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
    CHECK(j.sn == doctest::Approx(sn).epsilon(1e-11));
    CHECK(j.cn == doctest::Approx(cn).epsilon(1e-11));
    CHECK(j.dn == doctest::Approx(dn).epsilon(1e-11));
    CHECK(j.sn * j.sn + j.cn * j.cn == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(k * k * j.sn * j.sn + j.dn * j.dn == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("complex sn: real axis, imaginary shift and the differential equation") {
  const double k = 0.6;
  const double Kp = elliptic_K_prime(k);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(-0.8, 0.8);
  for (int t = 0; t < 200; ++t) {
    const std::complex<double> u{ux(rng), uy(rng)};
    // sn(u + iK') = 1 / (k sn u)
    const auto lhs = jacobi_sn(u + std::complex<double>(0, Kp), k);
    const auto rhs = 1.0 / (k * jacobi_sn(u, k));
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    // (sn')^2 = (1 - sn^2)(1 - k^2 sn^2), derivative by a complex central difference
    const double h = 1e-5;
    const auto s = jacobi_sn(u, k);
    const auto d = (jacobi_sn(u + h, k) - jacobi_sn(u - h, k)) / (2 * h);
    const auto ode = (1.0 - s * s) * (1.0 - k * k * s * s);
    CHECK(std::abs(d * d - ode) < 1e-7 * (1.0 + std::abs(ode)));
  }
  CHECK(std::abs(jacobi_sn({1.3, 0.0}, k) - jacobi_elliptic(1.3, k).sn) == 0.0);
}

TEST_CASE("Groetzsch modulus: symmetry point, Boost oracle and functional equations") {
  CHECK(std::abs(groetzsch_mu(1.0 / std::sqrt(2.0)) - pi / 2) < 1e-12);
  for (double r = 0.02; r < 0.99; r += 0.049) {
    const double rc = std::sqrt(1.0 - r * r);
    const double oracle = 0.5 * pi * boost::math::ellint_1(rc) / boost::math::ellint_1(r);
    CHECK(groetzsch_mu(r) == doctest::Approx(oracle).epsilon(1e-12));
    // mu(r) mu(r') = pi^2 / 4
    CHECK(groetzsch_mu(r) * groetzsch_mu(rc) == doctest::Approx(pi * pi / 4).epsilon(1e-12));
    // Landen: mu(2 sqrt(r) / (1 + r)) = mu(r) / 2
    CHECK(groetzsch_mu(2.0 * std::sqrt(r) / (1.0 + r)) ==
          doctest::Approx(groetzsch_mu(r) / 2).epsilon(1e-11));
  }
}

TEST_CASE("property: mu is strictly decreasing") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int t = 0; t < 1000; ++t) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(groetzsch_mu(a) > groetzsch_mu(b));
  }
}

TEST_CASE("Teichmueller modulus oracle") {
  const double x = std::pow(2.0, -0.25);
  const double oracle =
      pi * boost::math::ellint_1(std::sqrt(1.0 - x * x)) / boost::math::ellint_1(x);
  CHECK(teichmuller_ring_modulus() == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(teichmuller_ring_modulus() == doctest::Approx(2.574988).epsilon(1e-6));
}

TEST_CASE("modulus equation: symmetry point and round trip") {
  // (pi/4) K'/K = pi/4 at m = 1/sqrt 2, i.e. r = exp(-pi/8)
  CHECK(std::abs(solve_modulus_equation(std::exp(-pi / 8)) - 1.0 / std::sqrt(2.0)) < 1e-8);
  for (double r : {0.3, 0.5, 1.0 / std::sqrt(2.0), 0.8, 0.9}) {
    const double m = solve_modulus_equation(r);
    const double mc = std::sqrt(1.0 - m * m);
    const double lhs = 0.25 * pi * boost::math::ellint_1(mc) / boost::math::ellint_1(m);
    CHECK(lhs == doctest::Approx(std::log(1.0 / (r * r))).epsilon(1e-10));
  }
  CHECK(solve_modulus_equation(1.0 / std::sqrt(2.0)) == doctest::Approx(0.7962652464).epsilon(1e-9));
}
