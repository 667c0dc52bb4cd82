#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dw/grid.hpp"
#include "dw/specfun.hpp"

namespace dw {

enum class ProfileShape { constant, smooth_power, pure_power };

// Radial damping coefficient a(x) with |x|^alpha a(x) -> a0.
struct DampingProfile {
  ProfileShape shape = ProfileShape::constant;
  double a0 = 1.0;
  double alpha = 0.0;  // in [0,1); forced to 0 for constant
  int dim = 1;         // N
  double r_min = 0.0;  // pure_power only: inner radius > 0

  double a(double r) const;
  double da(double r) const;
};

// (a(r), da/dr) with the pure_power domain check.
std::pair<double, double> damping_eval(const DampingProfile& p, double r);

// Bundles A_eps (exact radial solution of Delta A = a plus an offset), the
// parabolic-cone weight Psi = t0 + t + A_eps and the supersolution family
// Phi_{beta,eps} = (t0+t)^{-beta} phi_beta(z), z = gamma_tilde A_eps/(t0+t).
// Immutable after construction; all evaluators are pure.
class WeightFamily {
 public:
  struct PhiDerivs {
    double Phi;
    double dPhi_dt;
    double gradPhi_r;
    double lapPhi;
  };

  const DampingProfile& profile() const { return profile_; }
  double eps() const { return eps_; }
  double t0() const { return t0_; }
  double offset() const { return offset_; }
  double r_base() const { return r_base_; }
  double r_max() const { return rt_.back(); }
  const specfun::GammaPair& gammas() const { return gammas_; }

  double A(double r) const;       // A_eps(r)
  double dA(double r) const;      // A_eps'(r)
  // Delta A from the interpolated flux table r^{N-1} A'; used to audit the
  // quadrature fidelity of the construction (ideally == a).
  double lapA_table(double r) const;
  double psi(double r, double t) const;
  double z(double r, double t) const;  // gamma_tilde A_eps(r) / (t0 + t)

  // Phi_{beta} and its derivatives; dPhi_dt is returned through the identity
  // dPhi_dt = -beta Phi_{beta+1} (the chain rule gives the same value, see
  // phi_time_derivative_chain for the cross-check route).
  PhiDerivs phi_weight(double beta, double r, double t) const;
  double phi_time_derivative_chain(double beta, double r, double t) const;

  friend WeightFamily build_A(const DampingProfile& profile, double eps,
                              double r_max, double t0,
                              std::optional<double> fixed_offset);

 private:
  DampingProfile profile_;
  double eps_ = 0.0;
  double t0_ = 1.0;
  double offset_ = 0.0;
  double r_base_ = 0.0;  // 0 for whole space / line, r_min for exterior
  specfun::GammaPair gammas_;
  // uniform tables: I(r) = int_{r_base}^r tau^{N-1} a(tau) dtau and
  // A_core(r) = int_{r_base}^r s^{1-N} I(s) ds   (offset excluded)
  std::vector<double> rt_, itab_, atab_;
  double ht_ = 0.0;

  double interp_I(double r) const;
  double interp_Acore(double r) const;
};

// Constructs the table by composite Gauss quadrature and selects the offset
// A0 (unless fixed) so that the (A3) ratio |A'|^2/(a A) stays below
// (2-alpha)/(N-alpha) + eps/2 on a dense sample grid.
WeightFamily build_A(const DampingProfile& profile, double eps, double r_max,
                     double t0, std::optional<double> fixed_offset = {});

struct AReport {
  double A1_margin;                        // max |Delta A / a - 1|
  std::pair<double, double> A2_constants;  // min/max of A / <r>^{2-alpha}
  double A3_worst_ratio;                   // max |A'|^2 / (a A)
};

AReport verify_A_properties(const WeightFamily& w,
                            const std::vector<double>& samples);

// min over the sample grid of (a dPhi_dt - lapPhi) Psi^{beta+1} / a; a positive
// minimum certifies the supersolution inequality with that constant.
double supersolution_margin(const WeightFamily& w, double beta,
                            const std::vector<double>& rs,
                            const std::vector<double>& ts);

struct SlackReport {
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
};

// Both sides of  int u Lap u Phi^{-1+2d} <= -(d/(1-d)) int |grad u|^2 Phi^{-1+2d}
//                + ((1-2d)/2) int u^2 (Lap Phi) Phi^{-2+2d}
// evaluated by grid quadrature for a zero-trace grid function u.
SlackReport delta_phi_inequality_check(const Grid& g,
                                       const std::vector<double>& u,
                                       const WeightFamily& w, double beta,
                                       double delta, double t);

}  // namespace dw
