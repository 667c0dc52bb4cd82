#include "dw/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dw/errors.hpp"

namespace dw {

namespace {

// 4-point Gauss-Legendre on [-1,1]
constexpr std::array<double, 4> kGlNodes = {
    -0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
    0.8611363115940526};
constexpr std::array<double, 4> kGlWeights = {
    0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
    0.3478548451374538};

template <typename F>
double gl4(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int q = 0; q < 4; ++q) s += kGlWeights[q] * f(mid + half * kGlNodes[q]);
  return s * half;
}

struct Hermite {
  double f0, f1, d0, d1, x0, h;
  double value(double x) const {
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
  }
  double deriv(double x) const {
    const double t = (x - x0) / h;
    const double t2 = t * t;
    return (6 * t2 - 6 * t) / h * f0 + (3 * t2 - 4 * t + 1) * d0 +
           (6 * t - 6 * t2) / h * f1 + (3 * t2 - 2 * t) * d1;
  }
};

}  // namespace

double DampingProfile::a(double r) const {
  switch (shape) {
    case ProfileShape::constant:
      return a0;
    case ProfileShape::smooth_power:
      return a0 * std::pow(1.0 + r * r, -0.5 * alpha);
    case ProfileShape::pure_power:
      if (r < r_min) {
        throw std::domain_error("pure_power damping: r < r_min");
      }
      return a0 * std::pow(r, -alpha);
  }
  return a0;
}

double DampingProfile::da(double r) const {
  switch (shape) {
    case ProfileShape::constant:
      return 0.0;
    case ProfileShape::smooth_power:
      return -a0 * alpha * r * std::pow(1.0 + r * r, -0.5 * alpha - 1.0);
    case ProfileShape::pure_power:
      if (r < r_min) {
        throw std::domain_error("pure_power damping: r < r_min");
      }
      return -a0 * alpha * std::pow(r, -alpha - 1.0);
  }
  return 0.0;
}

std::pair<double, double> damping_eval(const DampingProfile& p, double r) {
  return {p.a(r), p.da(r)};
}

double WeightFamily::interp_I(double r) const {
  if (r <= rt_.front()) return 0.0;
  if (r > rt_.back() * (1.0 + 1e-12)) {
    throw std::domain_error("WeightFamily: r beyond the tabulated range");
  }
  std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((r - rt_.front()) / ht_), rt_.size() - 2);
  const auto integrand = [this](double x) {
    return std::pow(x, profile_.dim - 1) * profile_.a(x);
  };
  Hermite hm{itab_[i], itab_[i + 1], integrand(rt_[i]), integrand(rt_[i + 1]),
             rt_[i], ht_};
  return hm.value(std::min(r, rt_.back()));
}

double WeightFamily::interp_Acore(double r) const {
  if (r <= rt_.front()) return 0.0;
  if (r > rt_.back() * (1.0 + 1e-12)) {
    throw std::domain_error("WeightFamily: r beyond the tabulated range");
  }
  std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((r - rt_.front()) / ht_), rt_.size() - 2);
  const auto dA_node = [this](std::size_t j) {
    const double rr = rt_[j];
    if (rr == 0.0) return 0.0;
    return std::pow(rr, 1 - profile_.dim) * itab_[j];
  };
  Hermite hm{atab_[i], atab_[i + 1], dA_node(i), dA_node(i + 1), rt_[i], ht_};
  return hm.value(std::min(r, rt_.back()));
}

double WeightFamily::A(double r) const { return offset_ + interp_Acore(r); }

double WeightFamily::lapA_table(double r) const {
  if (r <= rt_.front()) r = rt_.front() + 0.5 * ht_;
  std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>((r - rt_.front()) / ht_), rt_.size() - 2);
  const auto integrand = [this](double x) {
    return std::pow(x, profile_.dim - 1) * profile_.a(x);
  };
  Hermite hm{itab_[i], itab_[i + 1], integrand(rt_[i]), integrand(rt_[i + 1]),
             rt_[i], ht_};
  return std::pow(r, 1 - profile_.dim) * hm.deriv(r);
}

double WeightFamily::dA(double r) const {
  if (r <= rt_.front()) return 0.0;
  return std::pow(r, 1 - profile_.dim) * interp_I(r);
}

double WeightFamily::psi(double r, double t) const { return t0_ + t + A(r); }

double WeightFamily::z(double r, double t) const {
  return gammas_.gamma_tilde * A(r) / (t0_ + t);
}

WeightFamily::PhiDerivs WeightFamily::phi_weight(double beta, double r,
                                                 double t) const {
  const double zz = z(r, t);
  if (zz > 50.0) {
    throw ConfigError(
        "Phi weight: z = " + std::to_string(zz) +
        " exceeds the series range 50; increase t0 or shrink the domain");
  }
  const double tp = t0_ + t;
  const double gt = gammas_.gamma_tilde;
  const double pw = std::pow(tp, -beta);
  const specfun::PhiValue pv =
      specfun::phi_eval({beta, gammas_.gamma}, zz);
  const specfun::PhiValue pv1 =
      specfun::phi_eval({beta + 1.0, gammas_.gamma}, zz);
  const double ar = profile_.a(r);
  const double dAr = dA(r);
  PhiDerivs d;
  d.Phi = pw * pv.phi;
  d.dPhi_dt = -beta * std::pow(tp, -beta - 1.0) * pv1.phi;
  d.gradPhi_r = pw * pv.dphi * gt * dAr / tp;
  d.lapPhi = pw * (pv.d2phi * gt * gt * dAr * dAr / (tp * tp) +
                   pv.dphi * gt * ar / tp);
  return d;
}

double WeightFamily::phi_time_derivative_chain(double beta, double r,
                                               double t) const {
  const double zz = z(r, t);
  const double tp = t0_ + t;
  const specfun::PhiValue pv = specfun::phi_eval({beta, gammas_.gamma}, zz);
  return -std::pow(tp, -beta - 1.0) * (beta * pv.phi + zz * pv.dphi);
}

WeightFamily build_A(const DampingProfile& profile, double eps, double r_max,
                     double t0, std::optional<double> fixed_offset) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("build_A: eps must lie in (0,1/2)");
  }
  if (t0 < 1.0) throw std::domain_error("build_A: t0 must be >= 1");
  WeightFamily w;
  w.profile_ = profile;
  w.eps_ = eps;
  w.t0_ = t0;
  w.r_base_ = profile.shape == ProfileShape::pure_power ? profile.r_min : 0.0;
  if (profile.shape == ProfileShape::pure_power && !(profile.r_min > 0.0)) {
    throw std::domain_error("build_A: pure_power needs r_min > 0");
  }
  if (!(r_max > w.r_base_)) throw std::domain_error("build_A: r_max too small");
  w.gammas_ = specfun::gamma_pair(profile.dim, profile.alpha, eps);

  // Tables with a little headroom past r_max.
  const double span = (r_max - w.r_base_) * 1.02 + 1.0;
  w.ht_ = std::max(span / 300000.0, 2e-3);
  const std::size_t nodes = static_cast<std::size_t>(std::ceil(span / w.ht_)) + 1;
  w.rt_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    w.rt_[i] = w.r_base_ + w.ht_ * static_cast<double>(i);
  }

  // I(r) = int tau^{N-1} a(tau); cumulative composite Gauss.
  const int N = profile.dim;
  w.itab_.assign(nodes, 0.0);
  long double acc = 0.0L;
  for (std::size_t i = 1; i < nodes; ++i) {
    acc += gl4(
        [&](double x) { return std::pow(x, N - 1) * profile.a(x); },
        w.rt_[i - 1], w.rt_[i]);
    w.itab_[i] = static_cast<double>(acc);
  }

  // A_core(r) = int s^{1-N} I(s) ds with I from the freshly built table.
  w.atab_.assign(nodes, 0.0);
  acc = 0.0L;
  for (std::size_t i = 1; i < nodes; ++i) {
    acc += gl4(
        [&](double s) { return std::pow(s, 1 - N) * w.interp_I(s); },
        w.rt_[i - 1], w.rt_[i]);
    w.atab_[i] = static_cast<double>(acc);
  }

  if (fixed_offset) {
    if (!(*fixed_offset > 0.0)) {
      throw std::domain_error("build_A: offset must be positive");
    }
    w.offset_ = *fixed_offset;
    return w;
  }

  // Offset selection: the (A3) ratio decreases in A0; search for a value with
  // the sampled ratio below (2-alpha)/(N-alpha) + eps/2.
  const double target =
      (2.0 - profile.alpha) / (static_cast<double>(N) - profile.alpha) +
      0.5 * eps;
  const std::size_t n_samples = 4001;
  std::vector<double> sr(n_samples), sdA(n_samples), sa(n_samples),
      sAcore(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    sr[i] = w.r_base_ +
            (r_max - w.r_base_) * static_cast<double>(i) /
                static_cast<double>(n_samples - 1);
    sdA[i] = sr[i] <= w.r_base_
                 ? 0.0
                 : std::pow(sr[i], 1 - N) * w.interp_I(sr[i]);
    sa[i] = profile.a(sr[i]);
    sAcore[i] = w.interp_Acore(sr[i]);
  }
  const auto worst_ratio = [&](double a0) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      worst = std::max(worst, sdA[i] * sdA[i] / (sa[i] * (a0 + sAcore[i])));
    }
    return worst;
  };

  double lo = 1e-3;
  if (worst_ratio(lo) <= target) {
    w.offset_ = lo;
    return w;
  }
  double hi = lo;
  while (hi < 1e9 && worst_ratio(hi) > target) hi *= 2.0;
  if (worst_ratio(hi) > target) {
    throw ConstructionError(
        "build_A: no offset in [1e-3, 1e9] satisfies the (A3) bound; worst "
        "ratio " +
        std::to_string(worst_ratio(hi)) + " > " + std::to_string(target));
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (worst_ratio(mid) <= target ? hi : lo) = mid;
  }
  w.offset_ = hi;
  return w;
}

AReport verify_A_properties(const WeightFamily& w,
                            const std::vector<double>& samples) {
  const DampingProfile& p = w.profile();
  AReport rep{0.0, {1e300, -1e300}, 0.0};
  for (double r : samples) {
    if (r < w.r_base()) continue;
    const double a = p.a(r);
    const double Ar = w.A(r);
    const double dAr = w.dA(r);
    if (r > w.r_base()) {
      rep.A1_margin =
          std::max(rep.A1_margin, std::abs(w.lapA_table(r) / a - 1.0));
    }
    const double growth = Ar / std::pow(1.0 + r * r, 0.5 * (2.0 - p.alpha));
    rep.A2_constants.first = std::min(rep.A2_constants.first, growth);
    rep.A2_constants.second = std::max(rep.A2_constants.second, growth);
    rep.A3_worst_ratio = std::max(rep.A3_worst_ratio, dAr * dAr / (a * Ar));
  }
  return rep;
}

double supersolution_margin(const WeightFamily& w, double beta,
                            const std::vector<double>& rs,
                            const std::vector<double>& ts) {
  double worst = 1e300;
  for (double t : ts) {
    for (double r : rs) {
      const auto d = w.phi_weight(beta, r, t);
      const double a = w.profile().a(r);
      const double m = (a * d.dPhi_dt - d.lapPhi) *
                       std::pow(w.psi(r, t), beta + 1.0) / a;
      worst = std::min(worst, m);
    }
  }
  return worst;
}

SlackReport delta_phi_inequality_check(const Grid& g,
                                       const std::vector<double>& u,
                                       const WeightFamily& w, double beta,
                                       double delta, double t) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::domain_error("delta_phi_inequality_check: delta in (0,1/2)");
  }
  const std::vector<double> lap = laplacian_apply(g, u);
  const std::vector<double> grad = gradient(g, u);
  double lhs = 0.0, rhs_grad = 0.0, rhs_lap = 0.0;
  for (std::size_t i = 0; i < g.m; ++i) {
    const double r = g.radius(i);
    const auto d = w.phi_weight(beta, r, t);
    const double wexp = std::pow(d.Phi, -1.0 + 2.0 * delta);
    lhs += g.mu[i] * u[i] * lap[i] * wexp;
    rhs_grad += g.mu[i] * grad[i] * grad[i] * wexp;
    rhs_lap += g.mu[i] * u[i] * u[i] * d.lapPhi *
               std::pow(d.Phi, -2.0 + 2.0 * delta);
  }
  SlackReport rep;
  rep.lhs = lhs;
  rep.rhs = -delta / (1.0 - delta) * rhs_grad + 0.5 * (1.0 - 2.0 * delta) * rhs_lap;
  rep.slack = rep.rhs - rep.lhs;
  return rep;
}

}  // namespace dw
