#include "dw/diagnostics.hpp"

#include <cmath>

#include "dw/errors.hpp"

namespace dw {

std::vector<double> energy_trace(const FieldTrajectory& traj,
                                 const WeightFamily& w, const EnergyParams& p) {
  const Grid& g = *traj.grid;
  const bool needs_co = p.kind != EnergyKind::weighted_l2 &&
                        p.kind != EnergyKind::grad_l2;
  if (needs_co && !traj.has_co()) {
    throw ConfigError("energy_trace: this functional needs a co-trajectory");
  }
  const bool uses_phi = p.kind == EnergyKind::E0 || p.kind == EnergyKind::E;
  const double beta = p.lambda / (1.0 - 2.0 * p.delta);
  if (uses_phi) {
    if (!(p.delta > 0.0 && p.delta < 0.5)) {
      throw ConfigError("energy_trace: delta must lie in (0, 1/2)");
    }
    if (!(beta < w.gammas().gamma)) {
      throw ConfigError(
          "energy_trace: lambda/(1-2 delta) must stay below gamma_eps");
    }
  }

  std::vector<double> av(g.m);
  for (std::size_t i = 0; i < g.m; ++i) av[i] = w.profile().a(g.radius(i));

  // The kinetic/gradient part carries Psi^{q1}, the zero-order part a weight
  // W0 (a power of Psi, or Phi^{-1+2 delta} for the E0/E pair).
  double q1 = 0.0, q0 = 0.0, c1 = 0.0, c0 = 0.0;
  switch (p.kind) {
    case EnergyKind::E1:
      q1 = p.lambda + 1.0;
      c1 = 1.0;
      break;
    case EnergyKind::E0:
      c0 = 1.0;
      break;
    case EnergyKind::E:
      q1 = p.lambda + 1.0;
      c1 = p.nu;
      c0 = 1.0;
      break;
    case EnergyKind::E1j:
      q1 = p.lambda + 1.0 + 2.0 * p.j;
      c1 = 1.0;
      break;
    case EnergyKind::E0j:
      q0 = p.lambda + 2.0 * p.j;
      c0 = 1.0;
      break;
    case EnergyKind::Ej:
      q1 = p.lambda + 1.0 + 2.0 * p.j;
      q0 = p.lambda + 2.0 * p.j;
      c1 = p.nu;
      c0 = 1.0;
      break;
    case EnergyKind::weighted_l2:
    case EnergyKind::grad_l2:
      q0 = p.lambda;
      break;
  }

  std::vector<double> out(traj.steps());
  for (std::size_t k = 0; k < traj.steps(); ++k) {
    const double t = traj.time(k);
    const std::vector<double>& uk = traj.values[k];
    std::vector<double> grad;
    if (c1 > 0.0 || p.kind == EnergyKind::grad_l2) grad = gradient(g, uk);

    double acc = 0.0, comp = 0.0;
    const auto add = [&](double term) {
      const double y = term - comp;
      const double s = acc + y;
      comp = (s - acc) - y;
      acc = s;
    };
    for (std::size_t i = 0; i < g.m; ++i) {
      const double r = g.radius(i);
      double term = 0.0;
      switch (p.kind) {
        case EnergyKind::weighted_l2:
          term = av[i] * uk[i] * uk[i] * std::pow(w.psi(r, t), q0);
          break;
        case EnergyKind::grad_l2:
          term = grad[i] * grad[i] * std::pow(w.psi(r, t), q0);
          break;
        default: {
          const double ut = traj.dvalues[k][i];
          if (c1 > 0.0) {
            term += c1 * (grad[i] * grad[i] + ut * ut) *
                    std::pow(w.psi(r, t), q1);
          }
          if (c0 > 0.0) {
            const double zero_order =
                2.0 * uk[i] * ut + av[i] * uk[i] * uk[i];
            const double wt =
                uses_phi
                    ? std::pow(w.phi_weight(beta, r, t).Phi,
                               -1.0 + 2.0 * p.delta)
                    : std::pow(w.psi(r, t), q0);
            term += c0 * zero_order * wt;
          }
          break;
        }
      }
      add(g.mu[i] * term);
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& f,
                                         double dt) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * dt * (f[k - 1] + f[k]);
  }
  return out;
}

RateFit fit_decay_rate(const std::vector<double>& times,
                       const std::vector<double>& series, double t_a,
                       double t_b) {
  if (times.size() != series.size()) {
    throw ConfigError("fit_decay_rate: times/series length mismatch");
  }
  if (!(t_a > 0.0) || !(t_b >= 4.0 * t_a)) {
    throw ConfigError("fit_decay_rate: need 0 < t_a and t_b >= 4 t_a");
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_a || times[k] > t_b) continue;
    if (!(series[k] > 0.0)) {
      throw ConfigError("fit_decay_rate: series must be positive on the window");
    }
    xs.push_back(std::log(times[k]));
    ys.push_back(std::log(series[k]));
  }
  const std::size_t n = xs.size();
  if (n < 4) throw ConfigError("fit_decay_rate: fewer than 4 points in window");
  const double dn = static_cast<double>(n);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / dn, my = sy / dn;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  RateFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ys[k] - fit.intercept - fit.slope * xs[k];
    ss_res += r * r;
  }
  fit.stderr_slope = std::sqrt(ss_res / (dn - 2.0) / sxx);
  return fit;
}

RateVerdict one_sided_verdict(double fitted, double theoretical, double tol) {
  RateVerdict v;
  v.fitted = fitted;
  v.bound = theoretical;
  v.tol = tol;
  v.pass = fitted <= theoretical + tol;
  return v;
}

TheoreticalRates theoretical_rates(int n, double alpha, double lambda) {
  if (n < 0) throw ConfigError("theoretical_rates: n must be >= 0");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ConfigError("theoretical_rates: alpha must lie in [0, 1)");
  }
  if (lambda < 2.0 * alpha * (n + 1) / (2.0 - alpha) - 1e-12) {
    throw ConfigError(
        "theoretical_rates: need lambda >= 2 alpha (n+1)/(2-alpha)");
  }
  const double slope_step = 2.0 * (1.0 - alpha) / (2.0 - alpha);
  const double shift = alpha / (2.0 * (2.0 - alpha));
  TheoreticalRates rates;
  for (int j = 0; j <= n; ++j) {
    rates.rate_V.push_back(-lambda / 2.0 - slope_step * j + shift);
  }
  rates.rate_residual = -lambda / 2.0 - slope_step * (2 * n + 1) / 2.0 + shift;
  return rates;
}

}  // namespace dw
