#pragma once

#include <functional>
#include <vector>

#include "dw/grid.hpp"
#include "dw/weights.hpp"

namespace dw {

// Source sampled at integer steps; nullptr means zero.  Half-step values are
// formed by averaging the endpoint samples.
using SourceFn = std::function<void(std::size_t step, std::vector<double>& out)>;

// Crank-Nicolson for a(x) dt v - Lap v = G with homogeneous Dirichlet walls.
// One tridiagonal solve per step; the co-trajectory dt v is taken from the
// equation, dt v^k = a^{-1}(Lap_h v^k + G^k), never from time differences.
FieldTrajectory solve_parabolic(const Grid& g, const DampingProfile& a,
                                const std::vector<double>& v0,
                                const SourceFn& G, double T, double dt,
                                bool store_co = true);

}  // namespace dw
