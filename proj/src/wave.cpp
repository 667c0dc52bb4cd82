#include "dw/wave.hpp"

#include <cmath>

#include "dw/errors.hpp"

namespace dw {

FieldTrajectory solve_damped_wave(const Grid& g, const DampingProfile& a,
                                  const std::vector<double>& u0,
                                  const std::vector<double>& u1,
                                  const SourceFn& F, double T, double dt,
                                  bool store_co) {
  if (u0.size() != g.m || u1.size() != g.m) {
    throw ConfigError("solve_damped_wave: data/grid mismatch");
  }
  if (!(dt > 0.0) || !(T > 0.0)) throw ConfigError("solve_damped_wave: need T, dt > 0");
  if (dt > 0.9 * g.h * (1.0 + 1e-12)) {
    throw ConfigError("solve_damped_wave: CFL violation, need dt <= 0.9 h");
  }

  std::vector<double> av(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    av[i] = a.a(g.radius(i));
    if (!(av[i] > 0.0)) {
      throw std::domain_error("solve_damped_wave: damping must be positive");
    }
  }

  const std::size_t n_steps = static_cast<std::size_t>(std::llround(T / dt));
  FieldTrajectory traj;
  traj.grid = &g;
  traj.dt = dt;
  traj.values.reserve(n_steps + 1);

  const auto clamp_bc = [&](std::vector<double>& v) {
    if (g.bc_lo == Bc::dirichlet) v.front() = 0.0;
    v.back() = 0.0;
  };

  std::vector<double> prev = u0;
  clamp_bc(prev);
  traj.values.push_back(prev);

  std::vector<double> fk(g.m, 0.0);
  if (F) F(0, fk);

  // Startup: u^1 = u^0 + dt u1 + dt^2/2 (Lap u^0 - a u1 + F^0).
  std::vector<double> cur(g.m);
  {
    const std::vector<double> lap = laplacian_apply(g, prev);
    for (std::size_t i = 0; i < g.m; ++i) {
      cur[i] = prev[i] + dt * u1[i] +
               0.5 * dt * dt * (lap[i] - av[i] * u1[i] + fk[i]);
    }
    clamp_bc(cur);
    traj.values.push_back(cur);
  }

  std::vector<double> next(g.m);
  for (std::size_t k = 1; k < n_steps; ++k) {
    if (F) F(k, fk);
    const std::vector<double> lap = laplacian_apply(g, cur);
    const double idt2 = 1.0 / (dt * dt);
    for (std::size_t i = 0; i < g.m; ++i) {
      const double denom = idt2 + av[i] / (2.0 * dt);
      next[i] = (lap[i] + fk[i] + (2.0 * cur[i] - prev[i]) * idt2 +
                 av[i] * prev[i] / (2.0 * dt)) /
                denom;
    }
    clamp_bc(next);
    for (double x : next) {
      if (!std::isfinite(x)) {
        throw DivergenceError("solve_damped_wave: non-finite state", k + 1);
      }
    }
    prev.swap(cur);
    cur.swap(next);
    traj.values.push_back(cur);
  }

  if (store_co) {
    const std::size_t n = traj.values.size();
    traj.dvalues.resize(n);
    traj.dvalues[0] = u1;
    clamp_bc(traj.dvalues[0]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      std::vector<double> d(g.m);
      for (std::size_t i = 0; i < g.m; ++i) {
        d[i] = (traj.values[k + 1][i] - traj.values[k - 1][i]) / (2.0 * dt);
      }
      traj.dvalues[k] = std::move(d);
    }
    if (n >= 3) {
      std::vector<double> d(g.m);
      for (std::size_t i = 0; i < g.m; ++i) {
        d[i] = (3.0 * traj.values[n - 1][i] - 4.0 * traj.values[n - 2][i] +
                traj.values[n - 3][i]) /
               (2.0 * dt);
      }
      traj.dvalues[n - 1] = std::move(d);
    } else {
      traj.dvalues[n - 1] = traj.dvalues[0];
    }
  }
  return traj;
}

std::vector<double> discrete_wave_energy(const FieldTrajectory& traj) {
  const Grid& g = *traj.grid;
  const double dt = traj.dt;
  std::vector<double> energies;
  if (traj.values.size() < 2) return energies;
  energies.reserve(traj.values.size() - 1);
  for (std::size_t k = 0; k + 1 < traj.values.size(); ++k) {
    const auto& uk = traj.values[k];
    const auto& uk1 = traj.values[k + 1];
    const std::vector<double> lap = laplacian_apply(g, uk);
    double kin = 0.0, pot = 0.0;
    for (std::size_t i = 0; i < g.m; ++i) {
      const double vel = (uk1[i] - uk[i]) / dt;
      kin += g.mu[i] * vel * vel;
      pot += g.mu[i] * (-lap[i]) * uk1[i];
    }
    energies.push_back(0.5 * kin + 0.5 * pot);
  }
  return energies;
}

}  // namespace dw
