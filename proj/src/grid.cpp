#include "dw/grid.hpp"

#include <cmath>
#include <numbers>

#include "dw/errors.hpp"

namespace dw {

namespace {

double surface_measure(int N) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

}  // namespace

Grid Grid::make(Geometry geometry, int N, double r_lo, double r_hi,
                double h_target, Bc bc_lo, Bc bc_hi) {
  if (!(r_hi > r_lo)) throw ConfigError("grid: r_hi must exceed r_lo");
  if (!(h_target > 0.0)) throw ConfigError("grid: h must be positive");
  if (N < 1) throw ConfigError("grid: N must be >= 1");
  if (bc_hi != Bc::dirichlet) throw ConfigError("grid: bc_hi must be dirichlet");
  if (geometry == Geometry::line && bc_lo != Bc::dirichlet) {
    throw ConfigError("grid: line geometry requires Dirichlet at both ends");
  }
  if (bc_lo == Bc::neumann_regular) {
    if (geometry != Geometry::radial || r_lo != 0.0) {
      throw ConfigError("grid: neumann_regular only at the radial origin r=0");
    }
  }
  if (geometry == Geometry::radial && r_lo < 0.0) {
    throw ConfigError("grid: radial r_lo must be >= 0");
  }
  if (geometry == Geometry::radial && r_lo == 0.0 && bc_lo == Bc::dirichlet && N > 1) {
    throw ConfigError("grid: whole-space radial grids need neumann_regular at r=0");
  }

  Grid g;
  g.geometry = geometry;
  g.dim = N;
  g.r_lo = r_lo;
  g.r_hi = r_hi;
  g.bc_lo = bc_lo;
  g.bc_hi = bc_hi;
  const double span = r_hi - r_lo;
  g.m = static_cast<std::size_t>(std::llround(span / h_target)) + 1;
  if (g.m < 5) throw ConfigError("grid: too few nodes");
  g.h = span / static_cast<double>(g.m - 1);

  g.r.resize(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    g.r[i] = r_lo + g.h * static_cast<double>(i);
  }
  g.r.back() = r_hi;

  g.mu.assign(g.m, 0.0);
  if (geometry == Geometry::line) {
    for (std::size_t i = 0; i < g.m; ++i) g.mu[i] = g.h;
    g.mu.front() = 0.5 * g.h;
    g.mu.back() = 0.5 * g.h;
    return g;
  }

  // Radial: density rho from the stencil's detailed-balance relation
  // rho_i upper_i = rho_{i+1} lower_{i+1}, anchored to r^{N-1} at the last
  // interior node; rho = r^{N-1}(1 + O(h^2)).
  std::vector<double> lower(g.m, 0.0), diag(g.m, 0.0), upper(g.m, 0.0);
  laplacian_tridiag(g, lower, diag, upper);
  std::vector<double> rho(g.m, 0.0);
  const std::size_t last = g.m - 2;
  rho[last] = std::pow(g.r[last], N - 1);
  for (std::size_t i = last; i-- > 0;) {
    if (bc_lo == Bc::dirichlet && i == 0) break;
    if (upper[i] <= 0.0) throw ConfigError("grid: degenerate radial stencil");
    if (lower[i + 1] < 0.0) {
      throw ConfigError("grid: spacing too coarse near the origin for N=" +
                        std::to_string(N));
    }
    rho[i] = rho[i + 1] * lower[i + 1] / upper[i];
  }
  if (bc_lo == Bc::dirichlet) rho[0] = std::pow(g.r[0], N - 1);
  rho[g.m - 1] = std::pow(g.r[g.m - 1], N - 1);

  const double s = surface_measure(N);
  for (std::size_t i = 0; i < g.m; ++i) g.mu[i] = g.h * s * rho[i];
  if (bc_lo == Bc::dirichlet) g.mu.front() *= 0.5;
  g.mu.back() *= 0.5;
  return g;
}

double Grid::radius(std::size_t i) const {
  return geometry == Geometry::line ? std::abs(r[i]) : r[i];
}

void laplacian_tridiag(const Grid& g, std::vector<double>& lower,
                       std::vector<double>& diag, std::vector<double>& upper) {
  const double ih2 = 1.0 / (g.h * g.h);
  lower.assign(g.m, 0.0);
  diag.assign(g.m, 0.0);
  upper.assign(g.m, 0.0);
  for (std::size_t i = 1; i + 1 < g.m; ++i) {
    if (g.geometry == Geometry::line) {
      lower[i] = ih2;
      diag[i] = -2.0 * ih2;
      upper[i] = ih2;
    } else {
      const double drift = (g.dim - 1) / (2.0 * g.h * g.r[i]);
      lower[i] = ih2 - drift;
      diag[i] = -2.0 * ih2;
      upper[i] = ih2 + drift;
    }
  }
  if (g.bc_lo == Bc::neumann_regular) {
    // regularity limit of u'' + (N-1)/r u' at r = 0
    diag[0] = -2.0 * g.dim * ih2;
    upper[0] = 2.0 * g.dim * ih2;
  }
}

std::vector<double> laplacian_apply(const Grid& g, const std::vector<double>& u) {
  if (u.size() != g.m) throw ConfigError("laplacian_apply: dimension mismatch");
  std::vector<double> lower, diag, upper;
  laplacian_tridiag(g, lower, diag, upper);
  std::vector<double> out(g.m, 0.0);
  for (std::size_t i = 0; i < g.m; ++i) {
    double v = diag[i] * u[i];
    if (i > 0) v += lower[i] * u[i - 1];
    if (i + 1 < g.m) v += upper[i] * u[i + 1];
    out[i] = v;
  }
  if (g.bc_lo == Bc::dirichlet) out.front() = 0.0;
  out.back() = 0.0;
  return out;
}

double weighted_integral(const Grid& g, const std::vector<double>& f,
                         const std::function<double(double, std::size_t)>& w) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < g.m; ++i) {
    const double y = g.mu[i] * f[i] * w(g.r[i], i) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double integral(const Grid& g, const std::vector<double>& f) {
  return weighted_integral(g, f, [](double, std::size_t) { return 1.0; });
}

double l2_norm(const Grid& g, const std::vector<double>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < g.m; ++i) sum += g.mu[i] * f[i] * f[i];
  return std::sqrt(sum);
}

std::vector<double> gradient(const Grid& g, const std::vector<double>& u) {
  std::vector<double> out(g.m, 0.0);
  const double i2h = 1.0 / (2.0 * g.h);
  for (std::size_t i = 1; i + 1 < g.m; ++i) out[i] = (u[i + 1] - u[i - 1]) * i2h;
  if (g.m >= 3) {
    out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * i2h;
    out[g.m - 1] = (3.0 * u[g.m - 1] - 4.0 * u[g.m - 2] + u[g.m - 3]) * i2h;
  }
  return out;
}

double truncation_monitor(const FieldTrajectory& traj, std::size_t margin_nodes) {
  const Grid& g = *traj.grid;
  double worst = 0.0;
  for (const auto& snap : traj.values) {
    for (std::size_t j = 0; j < margin_nodes && j < g.m; ++j) {
      if (g.bc_lo == Bc::dirichlet) worst = std::max(worst, std::abs(snap[j]));
      worst = std::max(worst, std::abs(snap[g.m - 1 - j]));
    }
  }
  return worst;
}

}  // namespace dw
