#include "doctest.h"

#include "dyck/hexopt.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dyck;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("hex_area_bound examples") {
  const SurfaceParameters p = paper_parameters();
  const double h = p.h;
  CHECK(hex_area_bound({{0.25, h, 0.25}, {pi / 3, pi / 3, pi / 3}}) ==
        doctest::Approx((0.25 + 2 * h * h) * std::tan(pi / 6)).epsilon(1e-14));
  CHECK(hex_area_bound({{0.25, h, 0.25}, {pi / 3, pi / 3, pi / 3}}) == doctest::Approx(0.2027317527).epsilon(1e-9));
  CHECK(hex_area_bound({{0.25, h, 0.25}, {p.theta, pi - 2 * p.theta, p.theta}}) ==
        doctest::Approx(h * std::sqrt(1 - 4 * h * h)).epsilon(1e-12));
  const double eps = 1e-9;
  CHECK(hex_area_bound({{0.25, h, 0.25}, {pi / 2 - eps / 2, eps, pi / 2 - eps / 2}}) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("hex_area_bound rejects bad angles") {
  CHECK_THROWS_AS(hex_area_bound({{0.25, 0.2, 0.25}, {pi, 0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(hex_area_bound({{0.25, 0.2, 0.25}, {1.0, 1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(hex_area_bound({{0.25, -0.2, 0.25}, {1.0, 1.0, pi - 2.0}}), std::invalid_argument);
}

TEST_CASE("hex_area_bound symmetry and convexity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.05, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double d1 = U(rng), d2 = U(rng), d3 = U(rng);
    const double a1 = U(rng), a3 = U(rng) * (pi - a1 - 0.01), a2 = pi - a1 - a3;
    const double f = hex_area_bound({{d1, d2, d3}, {a1, a2, a3}});
    const double g = hex_area_bound({{d3, d2, d1}, {a3, a2, a1}});
    CHECK(f == doctest::Approx(g).epsilon(1e-14));
  }
  // second difference in alpha_1 (alpha_2 absorbs the change)
  for (double x = 0.05; x < 2.0; x += 0.05) {
    const double s = 1e-3, a3 = 1.0;
    auto f = [&](double a1) { return hex_area_bound({{0.25, 0.22, 0.25}, {a1, pi - a1 - a3, a3}}); };
    CHECK(f(x - s) + f(x + s) - 2 * f(x) > 0.0);
  }
}

TEST_CASE("minimize_hex finds the extremal hexagon") {
  const SurfaceParameters p = paper_parameters();
  const HexMinimum m = minimize_hex({0.25, p.h, 0.25}, 1e-3);
  CHECK(m.area == doctest::Approx(p.h * std::sqrt(1 - 4 * p.h * p.h)).epsilon(1e-10));
  CHECK(std::abs(m.area - 0.2008512020) < 1e-8);
  CHECK(std::abs(m.alpha[0] - p.theta) < 1e-4);
  CHECK(std::abs(m.alpha[2] - p.theta) < 1e-4);
  CHECK(std::abs(m.alpha[1] - (pi - 2 * p.theta)) < 1e-4);
  CHECK(m.convexity_verified);
  CHECK(m.symmetric_reduction);
  CHECK(m.grid_area >= m.area);
  CHECK(m.grid_area - m.area < 1e-5);
  CHECK(m.degenerate_excluded > 0);
}

TEST_CASE("minimize_hex on symmetric and asymmetric data") {
  const HexMinimum eq = minimize_hex({0.25, 0.25, 0.25}, 1e-3);
  for (double a : eq.alpha) CHECK(a == doctest::Approx(pi / 3).epsilon(1e-6));
  const HexMinimum as = minimize_hex({0.2, 0.3, 0.25}, 2e-3);
  CHECK_FALSE(as.symmetric_reduction);
  // Lagrange condition: d_i^2 / cos^2(alpha_i / 2) all equal
  const std::array<double, 3> d{0.2, 0.3, 0.25};
  double g[3];
  for (int i = 0; i < 3; ++i) g[i] = d[i] * d[i] / std::pow(std::cos(0.5 * as.alpha[i]), 2);
  CHECK(g[0] == doctest::Approx(g[1]).epsilon(1e-5));
  CHECK(g[1] == doctest::Approx(g[2]).epsilon(1e-5));
}

TEST_CASE("minimize_hex is a minimum and grid-phase invariant") {
  const double h = paper_parameters().h;
  const HexMinimum a = minimize_hex({0.25, h, 0.25}, 1e-3, 0.0);
  const HexMinimum b = minimize_hex({0.25, h, 0.25}, 1e-3, 0.5);
  CHECK(std::abs(a.area - b.area) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a.alpha[i] - b.alpha[i]) < 1e-6);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(1e-3, pi - 1e-3);
  for (int k = 0; k < 200; ++k) {
    const double a1 = U(rng), a2 = std::uniform_real_distribution<double>(1e-4, pi - a1 - 1e-4)(rng);
    CHECK(a.area <= hex_area_bound({{0.25, h, 0.25}, {a1, a2, pi - a1 - a2}}));
  }
  CHECK(minimize_hex({0.25, h, 0.25}, 1e-3, 0.0, 1).area == a.area);
}

TEST_CASE("tradeoff stationary point") {
  const TradeoffResult t = optimize_mobius_tradeoff();
  const double u = (8 - std::sqrt(19.0)) / 72;
  CHECK(std::abs(t.u - u) < 1e-8);
  CHECK(std::abs(t.h - std::sqrt(u)) < 1e-8);
  CHECK(t.residual < 1e-9);
  CHECK(t.exact_u == doctest::Approx(u).epsilon(1e-15));
  CHECK(std::abs(t.golden_h - t.h) < 1e-6);
  CHECK(t.area == doctest::Approx(1.1527943458).epsilon(1e-9));
  CHECK(tradeoff_area(0.25) == doctest::Approx(0.5 + 0.375 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(tradeoff_area(0.5) == doctest::Approx(0.0));
  // A is maximal at the equilibrium
  CHECK(tradeoff_area(t.h + 0.01) < t.area);
  CHECK(tradeoff_area(t.h - 0.01) < t.area);
  for (double x = 0.001; x < 0.25; x += 0.001) {
    if (std::abs(x - t.h) > 1e-8) CHECK(tradeoff_area(x) < t.area);
  }
  CHECK_THROWS_AS(optimize_mobius_tradeoff(0.1, 0.3), std::invalid_argument);
}

TEST_CASE("case bounds exceed the extremal area") {
  const SurfaceParameters p = paper_parameters();
  const auto cases = case_bounds(p);
  REQUIRE(cases.size() == 4);
  CHECK(cases[0].lower_bound == doctest::Approx(1 + 2 * pi * p.h * p.h).epsilon(1e-12));
  CHECK(std::abs(cases[0].lower_bound - 1.3177460092) < 1e-9);
  CHECK(std::abs(cases[0].margin - 0.1649516636) < 1e-8);
  for (int i = 1; i < 4; ++i) {
    CHECK(cases[i].lower_bound == doctest::Approx(1 + pi * p.h * p.h).epsilon(1e-12));
    CHECK(std::abs(cases[i].lower_bound - 1.158873) < 1e-6);
  }
  for (const auto& c : cases) CHECK(c.margin >= 0.006);
  CHECK(disk_face_bound(p.h) == doctest::Approx(0.15887).epsilon(1e-4));
  CHECK(strip_face_bound(p.h, 1.0) == doctest::Approx(0.449759).epsilon(1e-5));
  CHECK(two_edge_face_bound(p.h) == p.h);
  CHECK(extremal_area(p) == doctest::Approx(1.1527943458).epsilon(1e-10));
}
