#include "capq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "capq/errors.hpp"

namespace capq {

namespace {

constexpr std::uint8_t kEast = 1, kWest = 2, kNorth = 4, kSouth = 8;

bool carries_field(CellClass c) { return c != CellClass::Outer; }

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// The symmetric positive definite 5-point system restricted to interior
// cells. Vectors live on the full grid; entries off the interior are unused.
class InteriorSystem {
 public:
  explicit InteriorSystem(const GridMask& mask, std::vector<double>& fixed)
      : n_(static_cast<std::size_t>(mask.n())),
        links_(mask.size(), 0),
        diag_(mask.size(), 0),
        rhs_(mask.size(), 0.0) {
    const int n = mask.n();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t c = mask.index(i, j);
        if (mask.at(c) != CellClass::InteriorOmega) continue;
        cells_.push_back(static_cast<std::uint32_t>(c));
        const struct {
          int di, dj;
          std::uint8_t bit;
        } nbrs[] = {{1, 0, kEast}, {-1, 0, kWest}, {0, 1, kNorth}, {0, -1, kSouth}};
        for (const auto& nb : nbrs) {
          const int ii = i + nb.di, jj = j + nb.dj;
          if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;  // insulated edge
          const std::size_t k = mask.index(ii, jj);
          const CellClass kc = mask.at(k);
          if (!carries_field(kc)) continue;
          ++diag_[c];
          if (kc == CellClass::InteriorOmega) {
            links_[c] |= nb.bit;
          } else {
            rhs_[c] += fixed[k];
          }
        }
      }
    }
  }

  const std::vector<std::uint32_t>& cells() const { return cells_; }
  const std::vector<double>& rhs() const { return rhs_; }

  void apply(const std::vector<double>& x, std::vector<double>& out) const {
    for (const std::size_t c : cells_) {
      const std::uint8_t l = links_[c];
      double v = static_cast<double>(diag_[c]) * x[c];
      if (l & kEast) v -= x[c + 1];
      if (l & kWest) v -= x[c - 1];
      if (l & kNorth) v -= x[c + n_];
      if (l & kSouth) v -= x[c - n_];
      out[c] = v;
    }
  }

  // Modified incomplete Cholesky, MIC(0), in natural ordering.
  void build_preconditioner() {
    constexpr double tau = 0.97, sigma = 0.25;
    precon_.assign(diag_.size(), 0.0);
    for (const std::size_t c : cells_) {
      const double d = diag_[c];
      double e = d;
      if (links_[c] & kWest) {
        const std::size_t w = c - 1;
        const double pw = precon_[w];
        e -= pw * pw;
        if (links_[w] & kNorth) e -= tau * pw * pw;
      }
      if (links_[c] & kSouth) {
        const std::size_t s = c - n_;
        const double ps = precon_[s];
        e -= ps * ps;
        if (links_[s] & kEast) e -= tau * ps * ps;
      }
      if (e < sigma * d) e = d;
      precon_[c] = 1.0 / std::sqrt(e);
    }
  }

  void precondition(const std::vector<double>& r, std::vector<double>& q,
                    std::vector<double>& z) const {
    for (const std::size_t c : cells_) {
      double t = r[c];
      if (links_[c] & kWest) t += precon_[c - 1] * q[c - 1];
      if (links_[c] & kSouth) t += precon_[c - n_] * q[c - n_];
      q[c] = t * precon_[c];
    }
    for (auto it = cells_.rbegin(); it != cells_.rend(); ++it) {
      const std::size_t c = *it;
      double t = q[c];
      if (links_[c] & kEast) t += precon_[c] * z[c + 1];
      if (links_[c] & kNorth) t += precon_[c] * z[c + n_];
      z[c] = t * precon_[c];
    }
  }

  double dot(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (const std::size_t c : cells_) s += a[c] * b[c];
    return s;
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint8_t> links_;
  std::vector<std::uint8_t> diag_;  // count of field-carrying neighbours
  std::vector<double> rhs_;
  std::vector<double> precon_;
};

double true_residual(const InteriorSystem& sys, const std::vector<double>& x,
                     std::vector<double>& r, std::vector<double>& scratch) {
  sys.apply(x, scratch);
  for (const std::size_t c : sys.cells()) r[c] = sys.rhs()[c] - scratch[c];
  return std::sqrt(sys.dot(r, r));
}

}  // namespace

double PotentialField::interpolate(Point p) const {
  const int n = mask.n();
  const Rect& b = mask.bounds();
  const double fx = (p.x - b.xmin) / mask.h() - 0.5;
  const double fy = (p.y - b.ymin) / mask.h() - 0.5;
  const int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, n - 2);
  const int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, n - 2);
  const double tx = std::clamp(fx - i0, 0.0, 1.0);
  const double ty = std::clamp(fy - j0, 0.0, 1.0);
  const double v00 = value(i0, j0), v10 = value(i0 + 1, j0);
  const double v01 = value(i0, j0 + 1), v11 = value(i0 + 1, j0 + 1);
  return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
}

PotentialField solve_potential(GridMask mask, double tol) {
  SolveOptions options;
  options.tolerance = tol;
  return solve_potential(std::move(mask), options);
}

PotentialField solve_potential(GridMask mask, const SolveOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw Error(ErrorCode::DomainError, "solver tolerance must be positive");
  }
  const std::size_t cells = mask.size();
  std::vector<double> values(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    switch (mask.at(c)) {
      case CellClass::BoundaryE: values[c] = 1.0; break;
      case CellClass::BoundaryF: values[c] = -1.0; break;
      case CellClass::Outer: values[c] = mask.outer_sign(c); break;
      case CellClass::InteriorOmega: break;
    }
  }

  InteriorSystem sys(mask, values);
  if (sys.cells().empty()) {
    throw Error(ErrorCode::DisconnectedDomain,
                "no interior cells join E to F; the complement does not separate them");
  }
  sys.build_preconditioner();

  const int budget = options.max_iterations > 0 ? options.max_iterations : 50 * mask.n();
  const double bnorm = std::sqrt(sys.dot(sys.rhs(), sys.rhs()));
  std::vector<double> x(cells, 0.0), r(cells, 0.0), z(cells, 0.0), p(cells, 0.0),
      q(cells, 0.0), scratch(cells, 0.0);

  int iterations = 0;
  double residual = true_residual(sys, x, r, q) / bnorm;
  // Restart from the true residual whenever the recursive one claims
  // convergence, so the reported residual is never optimistic.
  while (residual > options.tolerance && iterations < budget) {
    sys.precondition(r, scratch, z);
    p = z;
    double rz = sys.dot(r, z);
    while (iterations < budget) {
      sys.apply(p, q);
      const double alpha = rz / sys.dot(p, q);
      double rr = 0.0;
      for (const std::size_t c : sys.cells()) {
        x[c] += alpha * p[c];
        r[c] -= alpha * q[c];
        rr += r[c] * r[c];
      }
      ++iterations;
      if (std::sqrt(rr) <= options.tolerance * bnorm) break;
      sys.precondition(r, scratch, z);
      const double rz_next = sys.dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (const std::size_t c : sys.cells()) p[c] = z[c] + beta * p[c];
    }
    residual = true_residual(sys, x, r, q) / bnorm;
  }
  if (residual > options.tolerance) {
    throw Error(ErrorCode::NonConvergence,
                "conjugate gradients stopped at relative residual " + std::to_string(residual) +
                    " after " + std::to_string(iterations) + " iterations");
  }

  for (const std::size_t c : sys.cells()) values[c] = x[c];

  PotentialField field;
  field.dirichlet_energy = dirichlet_energy(mask, values);
  field.mask = std::move(mask);
  field.values = std::move(values);
  field.capacity = 8.0 * std::numbers::pi / field.dirichlet_energy;
  field.energy_capacity = field.dirichlet_energy / (4.0 * std::numbers::pi);
  field.residual = residual;
  field.iterations = iterations;
  field.unreliable = field.energy_capacity > 1e3;
  return field;
}

double dirichlet_energy(const GridMask& mask, std::span<const double> values) {
  const int n = mask.n();
  CompensatedSum sum;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t c = mask.index(i, j);
      const CellClass cc = mask.at(c);
      if (!carries_field(cc)) continue;
      const bool c_interior = cc == CellClass::InteriorOmega;
      const std::pair<int, int> forward[] = {{i + 1, j}, {i, j + 1}};
      for (auto [ii, jj] : forward) {
        if (ii >= n || jj >= n) continue;
        const std::size_t k = mask.index(ii, jj);
        const CellClass kc = mask.at(k);
        if (!carries_field(kc)) continue;
        if (!c_interior && kc != CellClass::InteriorOmega) continue;
        const double d = values[c] - values[k];
        sum.add(d * d);
      }
    }
  }
  return sum.value();
}

double capacity(const PotentialField& field) {
  return 8.0 * std::numbers::pi / field.dirichlet_energy;
}

double annulus_extremal(double r, double R, std::complex<double> z) {
  if (!(r > 0.0 && r < R)) {
    throw Error(ErrorCode::DomainError, "annulus_extremal needs 0 < r < R");
  }
  const double rho = std::abs(z);
  constexpr double slack = 1e-12;
  if (rho < r * (1 - slack) || rho > R * (1 + slack)) {
    throw Error(ErrorCode::OutOfAnnulus,
                "|z| = " + std::to_string(rho) + " lies outside [r, R]");
  }
  return 2.0 * std::log(rho / r) / std::log(R / r) - 1.0;
}

}  // namespace capq
