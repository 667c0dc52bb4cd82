#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dw/grid.hpp"
#include "dw/parabolic.hpp"

using namespace dw;

namespace {

DampingProfile constant_a(double a0) {
  DampingProfile p;
  p.shape = ProfileShape::constant;
  p.a0 = a0;
  p.dim = 1;
  return p;
}

}  // namespace

TEST_CASE("zero data stays zero") {
  const Grid g = Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1, Bc::dirichlet,
                            Bc::dirichlet);
  const std::vector<double> v0(g.m, 0.0);
  const auto traj = solve_parabolic(g, constant_a(1.0), v0, nullptr, 1.0, 0.1);
  for (const auto& v : traj.values) {
    for (double x : v) CHECK(x == 0.0);
  }
}

TEST_CASE("heat kernel oracle with a = 1") {
  // dt v = v_xx, v0 = exp(-x^2): v(t,x) = (1+4t)^{-1/2} exp(-x^2/(1+4t)).
  const Grid g = Grid::make(Geometry::line, 1, -40.0, 40.0, 0.05, Bc::dirichlet,
                            Bc::dirichlet);
  std::vector<double> v0(g.m);
  for (std::size_t i = 0; i < g.m; ++i) v0[i] = std::exp(-g.r[i] * g.r[i]);
  const double T = 5.0, dt = 0.01;
  const auto traj = solve_parabolic(g, constant_a(1.0), v0, nullptr, T, dt);

  const std::size_t last = traj.steps() - 1;
  const double t = traj.time(last);
  double err2 = 0.0;
  for (std::size_t i = 0; i < g.m; ++i) {
    const double exact = std::exp(-g.r[i] * g.r[i] / (1.0 + 4.0 * t)) /
                         std::sqrt(1.0 + 4.0 * t);
    const double d = traj.values[last][i] - exact;
    err2 += g.mu[i] * d * d;
  }
  CHECK(std::sqrt(err2) < 1e-3);

  // L2-norm trace matches (pi/2)^{1/4} (1+4t)^{-1/4}.
  for (std::size_t k : {std::size_t(0), last / 2, last}) {
    const double tk = traj.time(k);
    const double exact = std::pow(M_PI / 2.0, 0.25) *
                         std::pow(1.0 + 4.0 * tk, -0.25);
    CHECK(l2_norm(g, traj.values[k]) == doctest::Approx(exact).epsilon(2e-3));
  }
}

TEST_CASE("second-order convergence on the decaying sine mode") {
  // On [0, pi] with Dirichlet walls, v0 = sin x gives v = e^{-t} sin x.
  std::vector<double> errs;
  for (double scale : {1.0, 0.5, 0.25}) {
    const double h = 0.02 * scale, dt = 0.02 * scale;
    const Grid g = Grid::make(Geometry::line, 1, 0.0, M_PI, h, Bc::dirichlet,
                              Bc::dirichlet);
    std::vector<double> v0(g.m);
    for (std::size_t i = 0; i < g.m; ++i) v0[i] = std::sin(g.r[i]);
    const auto traj = solve_parabolic(g, constant_a(1.0), v0, nullptr, 1.0, dt);
    const std::size_t last = traj.steps() - 1;
    const double t = traj.time(last);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.m; ++i) {
      worst = std::max(worst, std::abs(traj.values[last][i] -
                                       std::exp(-t) * std::sin(g.r[i])));
    }
    errs.push_back(worst);
  }
  const double order = std::log(errs[0] / errs[2]) / std::log(4.0);
  CHECK(order >= 1.9);
}

TEST_CASE("co-trajectory satisfies the equation pointwise") {
  const Grid g = Grid::make(Geometry::line, 1, -10.0, 10.0, 0.05, Bc::dirichlet,
                            Bc::dirichlet);
  std::vector<double> v0(g.m);
  for (std::size_t i = 0; i < g.m; ++i) v0[i] = std::exp(-g.r[i] * g.r[i]);
  const auto traj = solve_parabolic(g, constant_a(2.0), v0, nullptr, 1.0, 0.01);
  REQUIRE(traj.has_co());
  for (std::size_t k : {std::size_t(0), traj.steps() / 2}) {
    const auto lap = laplacian_apply(g, traj.values[k]);
    for (std::size_t i = 1; i + 1 < g.m; ++i) {
      CHECK(traj.dvalues[k][i] == doctest::Approx(lap[i] / 2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sqrt(a)-weighted L2 norm never increases") {
  DampingProfile a;
  a.shape = ProfileShape::smooth_power;
  a.a0 = 1.0;
  a.alpha = 0.5;
  a.dim = 1;
  const Grid g = Grid::make(Geometry::line, 1, -15.0, 15.0, 0.1, Bc::dirichlet,
                            Bc::dirichlet);
  std::vector<double> v0(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    v0[i] = std::exp(-(g.r[i] - 2.0) * (g.r[i] - 2.0));
  }
  const auto traj = solve_parabolic(g, a, v0, nullptr, 2.0, 0.05);
  auto weighted = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.m; ++i) {
      s += g.mu[i] * a.a(g.r[i]) * v[i] * v[i];
    }
    return s;
  };
  double prev = weighted(traj.values[0]);
  for (std::size_t k = 1; k < traj.steps(); ++k) {
    const double cur = weighted(traj.values[k]);
    CHECK(cur <= prev + 1e-12 * (1.0 + prev));
    prev = cur;
  }
}

TEST_CASE("source term is honored: forced equilibrium") {
  // With G = -Lap v* held static and v0 = v*, the solution stays at v*.
  const Grid g = Grid::make(Geometry::line, 1, 0.0, M_PI, 0.02, Bc::dirichlet,
                            Bc::dirichlet);
  std::vector<double> vstar(g.m);
  for (std::size_t i = 0; i < g.m; ++i) vstar[i] = std::sin(g.r[i]);
  const auto lap = laplacian_apply(g, vstar);
  const SourceFn G = [&lap](std::size_t, std::vector<double>& out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -lap[i];
  };
  const auto traj = solve_parabolic(g, constant_a(1.0), vstar, G, 1.0, 0.01);
  const std::size_t last = traj.steps() - 1;
  for (std::size_t i = 0; i < g.m; ++i) {
    CHECK(traj.values[last][i] == doctest::Approx(vstar[i]).epsilon(1e-6));
  }
}

TEST_CASE("guards") {
  const Grid g = Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1, Bc::dirichlet,
                            Bc::dirichlet);
  const std::vector<double> v0(g.m, 0.0);
  DampingProfile bad;
  bad.shape = ProfileShape::constant;
  bad.a0 = 0.0;
  bad.dim = 1;
  CHECK_THROWS(solve_parabolic(g, bad, v0, nullptr, 1.0, 0.1));
  CHECK_THROWS(
      solve_parabolic(g, constant_a(1.0), std::vector<double>(3, 0.0), nullptr,
                      1.0, 0.1));
  CHECK_THROWS(solve_parabolic(g, constant_a(1.0), v0, nullptr, 1.0, 0.0));
}
