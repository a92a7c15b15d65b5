#include "capq/conformal_chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "capq/errors.hpp"
#include "capq/special_functions.hpp"

namespace capq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTipGuard = 1e-6;

[[noreturn]] void violation(int stage, const std::string& msg) {
  throw Error(ErrorCode::DomainViolation, msg, "stage " + std::to_string(stage));
}

}  // namespace

double MapChain::slit_half_length() const { return std::sqrt(m); }
double MapChain::ray_gap() const { return 0.5 * (1.0 / std::sqrt(m) - std::sqrt(m)); }
double MapChain::modulus() const { return 2.0 * std::log(1.0 / r); }

std::string_view chain_stage_name(int stage) {
  switch (stage) {
    case 1: return "scale";
    case 2: return "joukowski";
    case 3: return "elliptic_sine";
    case 4: return "inversion";
    case 5: return "anti_joukowski";
    default: return "input";
  }
}

MapChain build_chain(double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "build_chain needs 0 < r < 1");
  MapChain c;
  c.r = r;
  c.m = solve_modulus_equation(r);
  c.K = elliptic_K(c.m);
  return c;
}

std::array<cplx, kChainStages + 1> trace_chain(const MapChain& chain, cplx z) {
  const double rho = std::abs(z);
  if (!(rho > chain.r && rho < 1.0 / chain.r)) {
    violation(1, "|z| = " + std::to_string(rho) + " is not inside A(r, 1/r)");
  }
  std::array<cplx, kChainStages + 1> w{};
  w[0] = z;
  w[1] = chain.r * z;
  w[2] = 0.5 * (w[1] + 1.0 / w[1]);
  if (std::abs(w[2] - 1.0) < kTipGuard || std::abs(w[2] + 1.0) < kTipGuard) {
    violation(3, "point within 1e-6 of a slit tip");
  }
  // The principal asin jumps across the real rays |x| > 1, but sn is even
  // about K, so the composite is continuous there.
  const cplx u = (2.0 * chain.K / kPi) * std::asin(w[2]);
  w[3] = chain.slit_half_length() * jacobi_sn(u, chain.m);
  const double a3 = std::abs(w[3]);
  if (!(a3 < 1.0 + 1e-9) || a3 == 0.0) {
    violation(4, "stage-3 image |w| = " + std::to_string(a3) + " is not in the punctured disk");
  }
  w[4] = 1.0 / w[3];
  w[5] = cplx(0.0, 0.5) * (w[4] - 1.0 / w[4]);
  return w;
}

cplx evaluate_chain(const MapChain& chain, cplx z) { return trace_chain(chain, z)[5]; }

ChainBoundaryCheck check_chain_boundary(const MapChain& chain, int samples) {
  ChainBoundaryCheck out;
  const double slit = chain.slit_half_length();
  // Points on the boundary circles themselves are outside the open annulus,
  // so sample a hair inside and skip the angles that hit a slit tip.
  const double inset = 1e-12;
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * kPi * (k + 0.5) / samples;
    const cplx e = std::polar(1.0, theta);
    try {
      const auto in = trace_chain(chain, chain.r * (1.0 + inset) * e);
      out.inner_residual = std::max(out.inner_residual, std::abs(std::abs(in[3]) - 1.0));
      const auto outer = trace_chain(chain, (1.0 - inset) / chain.r * e);
      const cplx w = outer[3];
      const double off = std::abs(w.imag()) + std::max(0.0, std::abs(w.real()) - slit);
      out.outer_residual = std::max(out.outer_residual, off);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DomainViolation) throw;
    }
  }
  return out;
}

CapacitorSpec omega0_spec(const MapChain& chain, double half_width, int resolution) {
  const double c = chain.ray_gap();
  CapacitorSpec spec;
  spec.shape_E = {Shape::slit({-1.0, 0.0}, {1.0, 0.0})};
  spec.shape_F = {Shape::slit({0.0, c}, {0.0, 2.0 * half_width}),
                  Shape::slit({0.0, -c}, {0.0, -2.0 * half_width})};
  spec.grid_bounds = {-half_width, -half_width, half_width, half_width};
  spec.resolution = resolution;
  return spec;
}

AnnulusSelfMap radial_stretch(double r, double s, double t) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::DomainError, "radial_stretch needs 0 < r < 1");
  if (!(s > r && s < 1.0 / r && t > r && t < 1.0 / r)) {
    throw Error(ErrorCode::DomainError, "radial_stretch needs r < s, t < 1/r");
  }
  AnnulusSelfMap f;
  f.r = r;
  f.s = s;
  f.t = t;
  f.alpha_inner = std::log(t / r) / std::log(s / r);
  f.alpha_outer = std::log(1.0 / (r * t)) / std::log(1.0 / (r * s));
  f.claimed_K = std::max(f.alpha_inner, f.alpha_outer);
  f.true_K = std::max({f.alpha_inner, 1.0 / f.alpha_inner, f.alpha_outer, 1.0 / f.alpha_outer});
  return f;
}

cplx AnnulusSelfMap::operator()(cplx z) const {
  const double rho = std::abs(z);
  if (rho == 0.0) return z;
  const double image = rho <= s ? r * std::pow(rho / r, alpha_inner)
                                : std::pow(r * rho, alpha_outer) / r;
  return z * (image / rho);
}

double pointwise_distortion(const AnnulusSelfMap& map, cplx z, double h) {
  if (!(h > 0.0 && h < 1e-4)) throw Error(ErrorCode::DomainError, "step must satisfy 0 < h < 1e-4");
  const double rho = std::abs(z);
  if (!(rho > map.r + 2 * h && rho < 1.0 / map.r - 2 * h) || std::abs(rho - map.s) < 2 * h) {
    throw Error(ErrorCode::DomainError,
                "distortion sample must be 2h inside the annulus and 2h off |z| = s");
  }
  const cplx fx = (map(z + h) - map(z - h)) / (2 * h);
  const cplx fy = (map(z + cplx(0, h)) - map(z - cplx(0, h))) / (2 * h);
  // Jacobian [[ux, uy], [vx, vy]].
  const double ux = fx.real(), vx = fx.imag(), uy = fy.real(), vy = fy.imag();
  const double det = ux * vy - uy * vx;
  if (!(det > 0.0)) {
    throw Error(ErrorCode::DegenerateJacobian, "Jacobian determinant is not positive");
  }
  const double frob = ux * ux + uy * uy + vx * vx + vy * vy;
  const double disc = std::sqrt(std::max(0.0, frob * frob - 4.0 * det * det));
  const double norm2 = 0.5 * (frob + disc);
  return norm2 / det;
}

}  // namespace capq
