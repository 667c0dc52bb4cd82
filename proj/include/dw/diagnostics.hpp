#pragma once

#include <cstddef>
#include <vector>

#include "dw/grid.hpp"
#include "dw/weights.hpp"

namespace dw {

// Weighted functionals of a trajectory w(t):
//   E1  = int (|grad w|^2 + |dt w|^2) Psi^{lambda+1}
//   E0  = int (2 w dt w + a w^2) Phi_beta^{-1+2 delta},  beta = lambda/(1-2 delta)
//   E   = nu E1 + E0
//   E1j = int (|grad w|^2 + |dt w|^2) Psi^{lambda+1+2j}
//   E0j = int (2 w dt w + a w^2) Psi^{lambda+2j}
//   Ej  = nu E1j + E0j
//   weighted_l2 = int a w^2 Psi^lambda
//   grad_l2     = int |grad w|^2 Psi^lambda
// E0 and E need beta < gamma_eps for the Phi weight to make sense.
enum class EnergyKind { E0, E1, E, E0j, E1j, Ej, weighted_l2, grad_l2 };

struct EnergyParams {
  EnergyKind kind = EnergyKind::weighted_l2;
  double lambda = 0.0;
  double delta = 0.1;
  double nu = 1.0;
  int j = 0;
};

std::vector<double> energy_trace(const FieldTrajectory& traj,
                                 const WeightFamily& w, const EnergyParams& p);

// Running integral int_0^{t_k} f dt by the trapezoid rule; same length as f.
std::vector<double> cumulative_trapezoid(const std::vector<double>& f,
                                         double dt);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // log-log intercept
  double stderr_slope = 0.0;
  std::size_t n_points = 0;
};

// Least-squares slope of log(series) against log(t) over the window
// [t_a, t_b].  Preconditions: t_b >= 4 t_a > 0, series positive on the window,
// at least 4 points inside it.
RateFit fit_decay_rate(const std::vector<double>& times,
                       const std::vector<double>& series, double t_a,
                       double t_b);

struct RateVerdict {
  double fitted = 0.0;
  double bound = 0.0;  // theoretical exponent (upper bound on the slope)
  double tol = 0.15;
  bool pass = false;  // fitted <= bound + tol (one-sided: faster decay is fine)
};

RateVerdict one_sided_verdict(double fitted, double theoretical,
                              double tol = 0.15);

struct TheoreticalRates {
  std::vector<double> rate_V;   // L^2 decay exponent of dt^j V_j, j = 0..n
  double rate_residual = 0.0;   // exponent of ||u - sum_j dt^j V_j||
};

// rate_Vj       = -lambda/2 - 2j(1-alpha)/(2-alpha) + alpha/(2(2-alpha))
// rate_residual = -lambda/2 - (2n+1)(1-alpha)/(2-alpha) + alpha/(2(2-alpha))
// Precondition: lambda >= 2 alpha (n+1)/(2-alpha).
TheoreticalRates theoretical_rates(int n, double alpha, double lambda);

}  // namespace dw
