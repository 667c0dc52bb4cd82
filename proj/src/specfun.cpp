#include "dw/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dw::specfun {

namespace {

bool is_nonpositive_integer(double b) {
  return b <= 0.0 && b == std::floor(b);
}

}  // namespace

double kummer_m(double b, double c, double s) {
  if (!std::isfinite(b) || !std::isfinite(c) || !std::isfinite(s)) {
    throw std::domain_error("kummer_m: non-finite argument");
  }
  if (s < 0.0) {
    throw std::domain_error("kummer_m: s must be >= 0");
  }
  if (c <= 0.0) {
    throw std::domain_error("kummer_m: c must be > 0");
  }
  if (s == 0.0) return 1.0;

  // Terminating case: the series is an exact finite polynomial.
  const bool finite_series = is_nonpositive_integer(b);
  const std::size_t n_terms =
      finite_series ? static_cast<std::size_t>(-b) + 1 : 4000;

  // Compensated summation of t_{n+1} = t_n (b+n)/((c+n)(n+1)) s.
  double sum = 1.0, comp = 0.0;
  double term = 1.0;
  int tiny_streak = 0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    term *= (b + static_cast<double>(n)) /
            ((c + static_cast<double>(n)) * (static_cast<double>(n) + 1.0)) * s;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (!finite_series) {
      if (std::abs(term) < 1e-17 * std::abs(sum)) {
        if (++tiny_streak >= 3) break;
      } else {
        tiny_streak = 0;
      }
    }
  }
  return sum;
}

GammaPair gamma_pair(int N, double alpha, double eps) {
  if (N < 1) throw std::domain_error("gamma_pair: N must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("gamma_pair: eps must lie in (0, 1/2)");
  }
  if (!(alpha >= 0.0) || alpha >= std::min(2.0, static_cast<double>(N))) {
    throw std::domain_error("gamma_pair: requires 0 <= alpha < min(2, N)");
  }
  GammaPair g;
  g.dim = N;
  g.alpha = alpha;
  g.eps = eps;
  g.gamma_tilde = 1.0 / ((2.0 - alpha) / (static_cast<double>(N) - alpha) + 2.0 * eps);
  g.gamma = (1.0 - 2.0 * eps) * g.gamma_tilde;
  return g;
}

PhiValue phi_eval(const PhiParams& p, double s) {
  if (p.beta < 0.0) throw std::domain_error("phi_eval: beta must be >= 0");
  if (p.gamma <= 0.0) throw std::domain_error("phi_eval: gamma must be > 0");
  if (!(s >= 0.0)) throw std::domain_error("phi_eval: s must be >= 0");

  if (p.beta == 0.0) return {1.0, 0.0, 0.0};
  if (std::abs(p.beta - p.gamma) <= 1e-14 * p.gamma) {
    const double e = std::exp(-s);
    return {e, -e, e};
  }

  const double b = p.gamma - p.beta;
  const double es = std::exp(-s);
  PhiValue v;
  v.phi = es * kummer_m(b, p.gamma, s);
  v.dphi = -(p.beta / p.gamma) * es * kummer_m(b, p.gamma + 1.0, s);
  v.d2phi = (p.beta * (p.beta + 1.0)) / (p.gamma * (p.gamma + 1.0)) * es *
            kummer_m(b, p.gamma + 2.0, s);
  return v;
}

}  // namespace dw::specfun
