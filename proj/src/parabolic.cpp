#include "dw/parabolic.hpp"

#include <cmath>

#include "dw/errors.hpp"

namespace dw {

namespace {

// Thomas algorithm; overwrites rhs with the solution.
void tridiag_solve(std::vector<double> lower, std::vector<double> diag,
                   std::vector<double> upper, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
  }
}

}  // namespace

FieldTrajectory solve_parabolic(const Grid& g, const DampingProfile& a,
                                const std::vector<double>& v0,
                                const SourceFn& G, double T, double dt,
                                bool store_co) {
  if (v0.size() != g.m) throw ConfigError("solve_parabolic: data/grid mismatch");
  if (!(dt > 0.0) || !(T > 0.0)) throw ConfigError("solve_parabolic: need T, dt > 0");

  std::vector<double> av(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    av[i] = a.a(g.radius(i));
    if (!(av[i] > 0.0)) {
      throw std::domain_error("solve_parabolic: damping must be positive");
    }
  }

  std::vector<double> ll, ld, lu;
  laplacian_tridiag(g, ll, ld, lu);

  // System matrix a/dt - Lap/2 with identity rows at Dirichlet nodes.
  std::vector<double> sl(g.m), sd(g.m), su(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    sl[i] = -0.5 * ll[i];
    sd[i] = av[i] / dt - 0.5 * ld[i];
    su[i] = -0.5 * lu[i];
  }
  const auto dirichlet_row = [&](std::size_t i) {
    sl[i] = 0.0;
    sd[i] = 1.0;
    su[i] = 0.0;
  };
  if (g.bc_lo == Bc::dirichlet) dirichlet_row(0);
  dirichlet_row(g.m - 1);

  const std::size_t n_steps = static_cast<std::size_t>(std::llround(T / dt));
  FieldTrajectory traj;
  traj.grid = &g;
  traj.dt = dt;
  traj.values.reserve(n_steps + 1);
  if (store_co) traj.dvalues.reserve(n_steps + 1);

  std::vector<double> v = v0;
  if (g.bc_lo == Bc::dirichlet) v.front() = 0.0;
  v.back() = 0.0;

  std::vector<double> gk(g.m, 0.0), gk1(g.m, 0.0), rhs(g.m);
  if (G) G(0, gk);

  const auto push = [&](const std::vector<double>& snap,
                        const std::vector<double>& src) {
    traj.values.push_back(snap);
    if (store_co) {
      std::vector<double> lap = laplacian_apply(g, snap);
      for (std::size_t i = 0; i < g.m; ++i) lap[i] = (lap[i] + src[i]) / av[i];
      if (g.bc_lo == Bc::dirichlet) lap.front() = 0.0;
      lap.back() = 0.0;
      traj.dvalues.push_back(std::move(lap));
    }
  };
  push(v, gk);

  for (std::size_t k = 0; k < n_steps; ++k) {
    if (G) G(k + 1, gk1);
    const std::vector<double> lap = laplacian_apply(g, v);
    for (std::size_t i = 0; i < g.m; ++i) {
      rhs[i] = av[i] / dt * v[i] + 0.5 * lap[i] + 0.5 * (gk[i] + gk1[i]);
    }
    if (g.bc_lo == Bc::dirichlet) rhs.front() = 0.0;
    rhs.back() = 0.0;
    tridiag_solve(sl, sd, su, rhs);
    v = rhs;
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw DivergenceError("solve_parabolic: non-finite state", k + 1);
      }
    }
    std::swap(gk, gk1);
    push(v, gk);
  }
  return traj;
}

}  // namespace dw
