#include "doctest.h"

#include "dyck/builders.hpp"
#include "dyck/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace dyck;

namespace {

constexpr double pi = std::numbers::pi;

double longest_edge(const ConeSurface& s) {
  double m = 0.0;
  for (const auto& l : s.lengths()) m = std::max({m, l[0], l[1], l[2]});
  return m;
}

// mesh_h giving exactly n-fold refinement
double level(const ConeSurface& s, int n) { return longest_edge(s) / n * (1.0 + 1e-9); }

}  // namespace

TEST_CASE("gudermann") {
  CHECK(gudermann(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  for (double s : {0.3, 1.0, 5.0}) CHECK(std::abs(gudermann(s) + gudermann(-s) - pi) < 1e-12);
  CHECK(std::abs(gudermann(1.09940) - 2.498) < 1e-3);
  double prev = gudermann(-10.0);
  for (double s = -10.0; s <= 10.0; s += 0.01) {
    const double v = gudermann(s);
    CHECK(std::abs(v + gudermann(-s) - pi) < 1e-12);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("fermi_half_width") {
  const double ell = paper_parameters().ell;
  CHECK(fermi_half_width(0.0, ell) == doctest::Approx(ell / 4).epsilon(1e-14));
  CHECK(std::abs(fermi_half_width(ell / 12, ell) - 1.2728593852) < 1e-9);
  const double t = std::acosh(1.0001 / std::tanh(ell / 4));
  CHECK_THROWS_AS(fermi_half_width(t, ell), std::domain_error);
}

TEST_CASE("hyperbolic collar profile symmetry") {
  const double ell = paper_parameters().ell;
  const CollarProfile p = hyperbolic_collar(ell);
  for (double t = 0.0; t < ell; t += 0.037) {
    CHECK(p.a(t) > 0.0);
    CHECK(p.b(t) == -p.a(t));
    CHECK(p.a(t + ell / 6) == doctest::Approx(p.a(t)).epsilon(1e-12));
    CHECK(p.a(ell / 12 + t) == doctest::Approx(p.a(ell / 12 - t)).epsilon(1e-12));
  }
}

TEST_CASE("muetzel bound on constant profiles") {
  const double ell = paper_parameters().ell;
  for (double w : {0.1, 0.5, 1.0, 2.0}) {
    const auto e = muetzel_bound(constant_collar(ell, w), 1e-10);
    CHECK(e.value == doctest::Approx(ell / (gudermann(w) - gudermann(-w))).epsilon(1e-10));
    CHECK(e.consistent);
  }
  double prev = INFINITY;
  for (double w = 0.5; w < 20.0; w *= 1.5) {
    const double v = muetzel_bound(constant_collar(ell, w), 1e-10).value;
    CHECK(v < prev);
    CHECK(v > ell / pi);
    prev = v;
  }
  CHECK(prev == doctest::Approx(ell / pi).epsilon(1e-6));
}

TEST_CASE("muetzel bound of the hyperbolic collar") {
  const double ell = paper_parameters().ell;
  const auto e = muetzel_bound(hyperbolic_collar(ell), 1e-8);
  CHECK(e.kind == CapacityKind::lower_muetzel);
  CHECK(e.consistent);
  CHECK(std::abs(e.value - e.cross_check) < 1e-6);
  CHECK(std::abs(e.value - 2.2946094708) < 1e-8);
  CHECK(e.value >= 2.29461 - 5e-6);
  // wider profile gives a smaller bound
  CollarProfile wide = hyperbolic_collar(ell);
  wide.a = [a = wide.a](double t) { return a(t) + 0.05; };
  CHECK(muetzel_bound(wide, 1e-8).value < e.value);
  CollarProfile bad = constant_collar(ell, 0.5);
  bad.b = [](double) { return 1.0; };
  CHECK_THROWS_AS(muetzel_bound(bad, 1e-8), std::domain_error);
}

TEST_CASE("flat capacity upper bound") {
  const SurfaceParameters p = paper_parameters();
  CHECK(std::abs(corner_correction(p) - 0.0018746371) < 1e-9);
  const auto e = flat_capacity_upper(p, 0.01);
  CHECK(std::abs(e.value - 2.2830930465) < 1e-9);
  CHECK(e.consistent);
  CHECK(std::abs(e.cross_check - e.value) < 1e-3);
  SurfaceParameters flat = p;
  flat.theta = 0.0;
  CHECK(corner_correction(flat) == 0.0);
  flat = p;
  flat.h = 1e-9;
  CHECK(std::abs(corner_correction(flat)) < 1e-17);
}

TEST_CASE("fem capacity of model annuli") {
  const auto cyl = fem_capacity(build_flat_cylinder(2.0, 0.5), 0.05);
  CHECK(cyl.kind == CapacityKind::fem_rayleigh);
  CHECK(cyl.value == doctest::Approx(4.0).epsilon(1e-9));
  const auto round = fem_capacity(build_round_annulus(1.0, std::exp(1.0), 0.05), 0.05);
  CHECK(round.value == doctest::Approx(2 * pi).epsilon(5e-3));
  const auto two = fem_capacity(build_round_annulus(1.0, 2.0, 0.05), 0.05);
  CHECK(two.value == doctest::Approx(2 * pi / std::log(2.0)).epsilon(5e-3));
  // invariant under scaling
  const auto big = fem_capacity(build_round_annulus(3.0, 6.0, 0.15), 0.15);
  CHECK(big.value == doctest::Approx(two.value).epsilon(1e-9));
}

TEST_CASE("fem capacity decreases under refinement") {
  const SurfaceParameters p = paper_parameters();
  const ConeSurface a = build_collar_flat(p);
  const double upper = flat_capacity_upper(p, 0.0).value;
  double prev = INFINITY;
  for (int n : {2, 4, 8}) {
    const double v = fem_capacity(a, level(a, n)).value;
    CHECK(v <= prev + 1e-4);
    CHECK(v < 2.29);
    prev = v;
  }
  CHECK(prev <= upper + 1e-3);
  const ConeSurface cyl = build_flat_cylinder(3.0, 0.7);
  prev = INFINITY;
  for (int n : {1, 2, 4}) {
    const double v = fem_capacity(cyl, level(cyl, n)).value;
    CHECK(v <= prev + 1e-4);
    prev = v;
  }
}

TEST_CASE("fem capacity of the hyperbolic chart") {
  const SurfaceParameters p = paper_parameters();
  const ConeSurface chart = build_fermi_chart(hyperbolic_collar(p.ell), 0.05);
  CHECK(chart.euler_characteristic() == 0);
  CHECK(chart.boundary_components() == 2);
  const double v = fem_capacity(chart, 0.05).value;
  CHECK(v >= muetzel_bound(hyperbolic_collar(p.ell)).value - 1e-6);
  CHECK(v > 2.29);
  // constant profile: the chart is a flat rectangle, capacity = ell / (2 w')
  const CollarProfile c = constant_collar(p.ell, 0.7);
  const double fem = fem_capacity(build_fermi_chart(c, 0.05), 0.05).value;
  CHECK(fem == doctest::Approx(muetzel_bound(c).value).epsilon(1e-9));
}

TEST_CASE("fem capacity rejects non-annuli") {
  CHECK_THROWS_AS(fem_capacity(build_flat_torus(), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(fem_capacity(build_extremal_dyck(paper_parameters()), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(fem_capacity(build_flat_cylinder(1.0, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("separation certificate") {
  const SurfaceParameters p = paper_parameters();
  const auto c = separation_certificate(p);
  CHECK(c.separated);
  CHECK(c.upper.value < 2.29);
  CHECK(c.lower.value > 2.29);
  CHECK(std::abs(c.upper_margin - 0.0069069535) < 1e-9);
  CHECK(std::abs(c.lower_margin - 0.0046094708) < 1e-8);
  CHECK(c.upper_margin >= 4e-3);
  CHECK(c.lower_margin >= 4e-3);
  CHECK(separation_certificate(p, 1e-3).separated);
  SurfaceParameters bent = p;
  bent.ell *= 1.01;
  const auto d = separation_certificate(bent);
  CHECK(std::abs(d.lower.value - c.lower.value) > 1e-3);
}

TEST_CASE("separation certificate with fem consistency") {
  const auto c = separation_certificate(paper_parameters(), 1e-8, 0.05);
  CHECK(c.fem_consistent);
  CHECK(c.fem_flat < 2.29);
  CHECK(c.fem_hyperbolic > 2.29);
}
