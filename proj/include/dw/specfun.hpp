#pragma once

#include <stdexcept>

namespace dw::specfun {

// Kummer confluent hypergeometric function M(b,c;s) = sum (b)_n/(c)_n s^n/n!,
// restricted to c > 0 and s >= 0.  Series summation with the multiplicative
// term recurrence and compensated accumulation; relative accuracy <= 1e-13
// for s <= 50.  When b is a non-positive integer the series terminates and is
// summed exactly as a polynomial.
double kummer_m(double b, double c, double s);

// The pair of exponents gamma_tilde = ((2-alpha)/(N-alpha) + 2 eps)^{-1} and
// gamma = (1-2 eps) gamma_tilde.
struct GammaPair {
  double gamma_tilde;
  double gamma;
  int dim;       // N
  double alpha;  // in [0,1)
  double eps;    // in (0,1/2)
};

GammaPair gamma_pair(int N, double alpha, double eps);

struct PhiParams {
  double beta;   // profile index, >= 0
  double gamma;  // second Kummer parameter, > 0
};

struct PhiValue {
  double phi;
  double dphi;
  double d2phi;
};

// phi_{beta}(s)   = e^{-s} M(gamma-beta, gamma;   s)
// phi_{beta}'(s)  = -(beta/gamma) e^{-s} M(gamma-beta, gamma+1; s)
// phi_{beta}''(s) = beta(beta+1)/(gamma(gamma+1)) e^{-s} M(gamma-beta, gamma+2; s)
// Closed-form fast paths for beta = 0 (phi == 1) and beta = gamma (phi = e^{-s}).
PhiValue phi_eval(const PhiParams& p, double s);

}  // namespace dw::specfun
