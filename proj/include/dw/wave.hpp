#pragma once

#include <vector>

#include "dw/grid.hpp"
#include "dw/parabolic.hpp"  // SourceFn
#include "dw/weights.hpp"

namespace dw {

// Leapfrog with the damping term taken implicitly (diagonal solve):
//   (u^{k+1} - 2u^k + u^{k-1})/dt^2 + a (u^{k+1}-u^{k-1})/(2dt) = Lap u^k + F^k.
// CFL: dt <= 0.9 h (unit wave speed).  Co-trajectory dt u by central
// differences of the stored states, one-sided O(dt^2) at the endpoints.
FieldTrajectory solve_damped_wave(const Grid& g, const DampingProfile& a,
                                  const std::vector<double>& u0,
                                  const std::vector<double>& u1,
                                  const SourceFn& F, double T, double dt,
                                  bool store_co = true);

// Half-step energies E^{k+1/2} = 1/2 ||(u^{k+1}-u^k)/dt||^2_mu
//                              + 1/2 <-Lap_h u^k, u^{k+1}>_mu;
// non-increasing (up to roundoff) when F == 0.
std::vector<double> discrete_wave_energy(const FieldTrajectory& traj);

}  // namespace dw
