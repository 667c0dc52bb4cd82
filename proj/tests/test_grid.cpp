#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dw/grid.hpp"

using namespace dw;

namespace {

std::vector<double> random_dirichlet_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(g.m);
  for (auto& x : u) x = dist(rng);
  if (g.bc_lo == Bc::dirichlet) u.front() = 0.0;
  u.back() = 0.0;
  return u;
}

double mu_inner(const Grid& g, const std::vector<double>& a,
                const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.m; ++i) s += g.mu[i] * a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("grid construction basics") {
  const Grid g = Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1, Bc::dirichlet,
                            Bc::dirichlet);
  CHECK(g.m == 21);
  CHECK(g.r_hi - g.r_lo == doctest::Approx((g.m - 1) * g.h).epsilon(1e-15));
  for (std::size_t i = 1; i + 1 < g.m; ++i) CHECK(g.mu[i] > 0.0);
}

TEST_CASE("laplacian exactness on quadratics") {
  SUBCASE("line x^2 -> 2") {
    const Grid g = Grid::make(Geometry::line, 1, -2.0, 3.0, 0.37, Bc::dirichlet,
                              Bc::dirichlet);
    std::vector<double> u(g.m);
    for (std::size_t i = 0; i < g.m; ++i) u[i] = g.r[i] * g.r[i];
    const auto lap = laplacian_apply(g, u);
    for (std::size_t i = 1; i + 1 < g.m; ++i) {
      CHECK(lap[i] == doctest::Approx(2.0).epsilon(1e-11));
    }
  }
  SUBCASE("radial N=3 r^2 -> 6, including the origin stencil") {
    const Grid g = Grid::make(Geometry::radial, 3, 0.0, 2.0, 0.05,
                              Bc::neumann_regular, Bc::dirichlet);
    std::vector<double> u(g.m);
    for (std::size_t i = 0; i < g.m; ++i) u[i] = g.r[i] * g.r[i];
    const auto lap = laplacian_apply(g, u);
    for (std::size_t i = 0; i + 1 < g.m; ++i) {
      CHECK(lap[i] == doctest::Approx(6.0).epsilon(1e-10));
    }
  }
  SUBCASE("constant field -> 0") {
    const Grid g = Grid::make(Geometry::radial, 3, 1.0, 4.0, 0.1, Bc::dirichlet,
                              Bc::dirichlet);
    const std::vector<double> u(g.m, 3.5);
    const auto lap = laplacian_apply(g, u);
    for (std::size_t i = 1; i + 1 < g.m; ++i) {
      CHECK(std::abs(lap[i]) < 1e-11);
    }
  }
}

TEST_CASE("mu-weighted self-adjointness and nonnegativity") {
  const Grid line = Grid::make(Geometry::line, 1, -3.0, 3.0, 0.05,
                               Bc::dirichlet, Bc::dirichlet);
  const Grid rad1 = Grid::make(Geometry::radial, 1, 0.0, 5.0, 0.05,
                               Bc::neumann_regular, Bc::dirichlet);
  const Grid rad3 = Grid::make(Geometry::radial, 3, 0.0, 5.0, 0.05,
                               Bc::neumann_regular, Bc::dirichlet);
  const Grid ext3 = Grid::make(Geometry::radial, 3, 1.0, 6.0, 0.05,
                               Bc::dirichlet, Bc::dirichlet);
  for (const Grid* gp : {&line, &rad1, &rad3, &ext3}) {
    const Grid& g = *gp;
    for (unsigned seed : {1u, 2u, 3u}) {
      const auto u = random_dirichlet_field(g, seed);
      const auto v = random_dirichlet_field(g, seed + 100);
      const auto Lu = laplacian_apply(g, u);
      const auto Lv = laplacian_apply(g, v);
      const double nu = l2_norm(g, u), nv = l2_norm(g, v);
      CHECK(std::abs(mu_inner(g, Lu, v) - mu_inner(g, u, Lv)) <=
            1e-10 * nu * nv);
      CHECK(mu_inner(g, Lu, u) <= 1e-12 * nu * nu);
    }
  }
}

TEST_CASE("laplacian convergence order on smooth fields") {
  std::vector<double> errs;
  for (double h : {0.1, 0.05, 0.025}) {
    const Grid g = Grid::make(Geometry::radial, 3, 0.0, 3.0, h,
                              Bc::neumann_regular, Bc::dirichlet);
    std::vector<double> u(g.m);
    for (std::size_t i = 0; i < g.m; ++i) u[i] = std::exp(-g.r[i] * g.r[i]);
    const auto lap = laplacian_apply(g, u);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < g.m; ++i) {
      const double r = g.r[i];
      const double exact = (4.0 * r * r - 6.0) * std::exp(-r * r);
      worst = std::max(worst, std::abs(lap[i] - exact));
    }
    errs.push_back(worst);
  }
  const double order = std::log(errs[0] / errs[2]) / std::log(4.0);
  CHECK(order >= 1.9);
}

TEST_CASE("quadrature oracles") {
  SUBCASE("constant over [-1,1]") {
    const Grid g = Grid::make(Geometry::line, 1, -1.0, 1.0, 0.01, Bc::dirichlet,
                              Bc::dirichlet);
    const std::vector<double> f(g.m, 1.0);
    CHECK(integral(g, f) == doctest::Approx(2.0).epsilon(1e-4));
  }
  SUBCASE("Gaussian integral sqrt(pi)") {
    const Grid g = Grid::make(Geometry::line, 1, -20.0, 20.0, 0.01,
                              Bc::dirichlet, Bc::dirichlet);
    std::vector<double> f(g.m);
    for (std::size_t i = 0; i < g.m; ++i) f[i] = std::exp(-g.r[i] * g.r[i]);
    CHECK(std::abs(integral(g, f) - std::sqrt(M_PI)) < 1e-6);
  }
  SUBCASE("unit-ball volume in N=3") {
    const Grid g = Grid::make(Geometry::radial, 3, 0.0, 1.0, 0.002,
                              Bc::neumann_regular, Bc::dirichlet);
    std::vector<double> f(g.m, 1.0);
    // Dirichlet outer node carries a half weight; compensate by including the
    // boundary value 1 like the interior.
    CHECK(integral(g, f) ==
          doctest::Approx(4.0 * M_PI / 3.0).epsilon(5e-3));
  }
  SUBCASE("weighted integral uses the weight pointwise") {
    const Grid g = Grid::make(Geometry::line, 1, 0.0, 1.0, 0.001, Bc::dirichlet,
                              Bc::dirichlet);
    std::vector<double> f(g.m, 1.0);
    const double v = weighted_integral(
        g, f, [&](double r, std::size_t) { return r * r; });
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  }
}

TEST_CASE("truncation monitor") {
  const Grid g = Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1, Bc::dirichlet,
                            Bc::dirichlet);
  FieldTrajectory traj;
  traj.grid = &g;
  traj.dt = 0.5;
  traj.values.assign(3, std::vector<double>(g.m, 0.0));
  CHECK(truncation_monitor(traj, 3) == 0.0);
  traj.values[1][1] = 0.25;   // inside the left margin
  traj.values[2][g.m / 2] = 9.0;  // interior, outside both margins
  CHECK(truncation_monitor(traj, 3) == doctest::Approx(0.25));
}

TEST_CASE("grid construction guards") {
  CHECK_THROWS(Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1,
                          Bc::neumann_regular, Bc::dirichlet));
  CHECK_THROWS(Grid::make(Geometry::radial, 3, 0.0, 2.0, 0.1, Bc::dirichlet,
                          Bc::dirichlet));  // whole space needs the origin bc
  CHECK_THROWS(Grid::make(Geometry::line, 1, -1.0, 1.0, 0.1, Bc::dirichlet,
                          Bc::neumann_regular));
}
