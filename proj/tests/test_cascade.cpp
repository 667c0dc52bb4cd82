#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dw/cascade.hpp"
#include "dw/grid.hpp"

using namespace dw;

namespace {

DampingProfile constant_a(double a0, int dim = 1) {
  DampingProfile p;
  p.shape = ProfileShape::constant;
  p.a0 = a0;
  p.dim = dim;
  return p;
}

DampingProfile smooth05(int dim = 1) {
  DampingProfile p;
  p.shape = ProfileShape::smooth_power;
  p.a0 = 1.0;
  p.alpha = 0.5;
  p.dim = dim;
  return p;
}

Grid line_grid(double lo, double hi, double h) {
  return Grid::make(Geometry::line, 1, lo, hi, h, Bc::dirichlet, Bc::dirichlet);
}

std::vector<double> gaussian(const Grid& g, double amp, double c, double w) {
  std::vector<double> v(g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    const double x = (g.r[i] - c) / w;
    v[i] = amp * std::exp(-x * x);
  }
  v.front() = v.back() = 0.0;
  return v;
}

}  // namespace

TEST_CASE("initial data tower: base levels") {
  const Grid g = line_grid(-10.0, 10.0, 0.1);
  const auto a = constant_a(2.0);
  const auto u0 = gaussian(g, 1.0, 0.0, 1.0);
  const auto u1 = gaussian(g, 0.5, 1.0, 2.0);

  SUBCASE("n = 0: V0(0) = u0 + u1/a") {
    const auto tower = initial_data_tower(g, a, u0, u1, 0, {1});
    REQUIRE(tower.size() == 1);
    REQUIRE(tower[0].size() == 2);
    for (std::size_t i = 0; i < g.m; ++i) {
      CHECK(tower[0][0][i] ==
            doctest::Approx(u0[i] + u1[i] / 2.0).epsilon(1e-14));
    }
  }
  SUBCASE("n = 2: column heads -(-a)^{-j-1} u1") {
    const auto tower = initial_data_tower(g, a, u0, u1, 2, {4, 3, 2});
    // j = 1: -(-a)^{-2} u1 = -u1/a^2;  j = 2: -(-a)^{-3} u1 = +u1/a^3.
    for (std::size_t i = 0; i < g.m; ++i) {
      CHECK(tower[1][0][i] == doctest::Approx(-u1[i] / 4.0).epsilon(1e-14));
      CHECK(tower[2][0][i] == doctest::Approx(u1[i] / 8.0).epsilon(1e-14));
    }
  }
  SUBCASE("zero data gives an all-zero tower") {
    const std::vector<double> z(g.m, 0.0);
    const auto tower = initial_data_tower(g, a, z, z, 1, {2, 1});
    for (const auto& col : tower) {
      for (const auto& lvl : col) {
        for (double x : lvl) CHECK(x == 0.0);
      }
    }
  }
  SUBCASE("a = 1, u0 = sin on [0,pi]: first level is -sin + O(h^2)") {
    const Grid gs = line_grid(0.0, M_PI, M_PI / 200.0);
    std::vector<double> s(gs.m), z(gs.m, 0.0);
    for (std::size_t i = 0; i < gs.m; ++i) s[i] = std::sin(gs.r[i]);
    const auto tower = initial_data_tower(gs, constant_a(1.0), s, z, 0, {1});
    for (std::size_t i = 1; i + 1 < gs.m; ++i) {
      CHECK(tower[0][1][i] == doctest::Approx(-s[i]).epsilon(5e-4));
    }
  }
  SUBCASE("increasing depths are rejected") {
    CHECK_THROWS(initial_data_tower(g, a, u0, u1, 1, {1, 2}));
  }
}

TEST_CASE("build_cascade on zero data is identically zero") {
  const Grid g = line_grid(-5.0, 5.0, 0.1);
  const std::vector<double> z(g.m, 0.0);
  CascadeOptions opt;
  opt.n = 1;
  opt.T = 1.0;
  opt.dt = 0.05;
  opt.lambda = 0.3;
  const auto b = build_cascade(g, constant_a(1.0), z, z, opt);
  for (double x : b.l2_u) CHECK(x == 0.0);
  for (const auto& tr : b.l2) {
    for (double x : tr) CHECK(x == 0.0);
  }
  for (const auto& tr : b.res) {
    for (double x : tr) CHECK(x == 0.0);
  }
  CHECK(b.lambda_schedule.size() == 3);
  CHECK(b.lambda_schedule[0] == 0.3);
  CHECK(b.lambda_schedule[2] == 0.3);  // alpha = 0: no shift
}

TEST_CASE("first-order decomposition defect refines at second order") {
  const Grid coarse = line_grid(0.0, M_PI, M_PI / 100.0);
  const Grid fine = line_grid(0.0, M_PI, M_PI / 200.0);
  const auto a = constant_a(1.0);
  auto data = [](const Grid& g) {
    std::vector<double> u0(g.m), u1(g.m);
    for (std::size_t i = 0; i < g.m; ++i) {
      u0[i] = std::sin(g.r[i]);
      u1[i] = -0.5 * std::sin(g.r[i]);
    }
    return std::pair{u0, u1};
  };
  const auto [u0c, u1c] = data(coarse);
  const auto [u0f, u1f] = data(fine);
  const double T = 2.0;
  const auto rc =
      verify_first_order_decomposition(coarse, a, u0c, u1c, T, 0.5 * coarse.h);
  const auto rf =
      verify_first_order_decomposition(fine, a, u0f, u1f, T, 0.5 * fine.h);
  CHECK(rc.max_defect > 0.0);
  const double ratio = rc.max_defect / rf.max_defect;
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
}

TEST_CASE("tower consistency residual is small on smooth data") {
  const Grid g = line_grid(-20.0, 20.0, 0.1);
  CascadeOptions opt;
  opt.n = 1;
  opt.T = 5.0;
  opt.dt = 0.05;
  const auto u0 = gaussian(g, 1.0, 0.0, 2.0);
  const auto u1 = gaussian(g, 0.5, 0.0, 3.0);
  const auto b = build_cascade(g, constant_a(1.0), u0, u1, opt);
  CHECK(tower_consistency_residual(b, constant_a(1.0)) < 1e-2);
}

TEST_CASE("compatibility data") {
  const Grid g = line_grid(-10.0, 10.0, 0.1);
  const auto u0 = gaussian(g, 1.0, 0.0, 1.5);
  const auto u1 = gaussian(g, 0.7, 0.5, 2.0);
  const std::vector<double> z(g.m, 0.0);

  SUBCASE("u1 = 0 gives a vanishing first level") {
    const auto tower = initial_data_tower(g, constant_a(1.0), u0, z, 1, {2, 1});
    const auto rep = compatibility_data(g, constant_a(1.0), z, 1, tower);
    for (double x : rep.recursion[1]) CHECK(x == 0.0);
    CHECK(rep.max_rel_discrepancy <= 1e-12);
  }

  SUBCASE("n = 1, a = 1 hand formula for the second level") {
    const auto a = constant_a(1.0);
    const auto tower = initial_data_tower(g, a, u0, u1, 1, {2, 1});
    const auto rep = compatibility_data(g, a, u1, 1, tower);
    // U^(1) = u1 and U^(2) = -u1 + Lap u0 + 2 Lap u1 on this grid.
    const auto lap0 = laplacian_apply(g, u0);
    const auto lap1 = laplacian_apply(g, u1);
    for (std::size_t i = 0; i < g.m; ++i) {
      CHECK(rep.recursion[1][i] == doctest::Approx(u1[i]).epsilon(1e-13));
      CHECK(rep.recursion[2][i] ==
            doctest::Approx(-u1[i] + lap0[i] + 2.0 * lap1[i])
                .epsilon(1e-12));
    }
    CHECK(rep.max_rel_discrepancy <= 1e-12);
  }

  SUBCASE("closed form matches the recursion for n = 1, 2 and both profiles") {
    for (const auto& a : {constant_a(1.3), smooth05()}) {
      for (int n : {1, 2}) {
        std::vector<int> depths(n + 1);
        for (int j = 0; j <= n; ++j) {
          depths[j] = std::max(2 * n - j, j == 0 ? 1 : 0);
        }
        const auto tower = initial_data_tower(g, a, u0, u1, n, depths);
        const auto rep = compatibility_data(g, a, u1, n, tower);
        CHECK(rep.max_rel_discrepancy <= 1e-12);
        CHECK(!rep.sign_note.empty());
      }
    }
  }

  SUBCASE("guards") {
    const auto tower = initial_data_tower(g, constant_a(1.0), u0, u1, 1, {2, 1});
    CHECK_THROWS(compatibility_data(g, constant_a(1.0), u1, 0, tower));
    CHECK_THROWS(compatibility_data(g, constant_a(1.0), u1, 2, tower));
  }
}
