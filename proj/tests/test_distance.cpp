#include "dyck/builders.hpp"
#include "dyck/constants.hpp"
#include "dyck/geodesic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace dyck;

TEST_CASE("distance between points of one face is Euclidean") {
  const ConeSurface t = build_flat_torus(1.0, 1.0);
  const SurfacePoint x{0, {0.5, 0.1}}, y{0, {0.7, 0.2}};
  const auto d = point_distance(t, x, y, 1.0);
  REQUIRE(d.finite);
  CHECK(d.distance == doctest::Approx(std::hypot(0.2, 0.1)).epsilon(1e-12));
  CHECK_FALSE(point_distance(t, x, y, 0.1).finite);
}

TEST_CASE("point distance on the torus wraps around") {
  const ConeSurface t = build_flat_torus(1.0, 1.0);
  const SurfacePoint x{0, {0.05, 0.02}}, y{0, {0.95, 0.02}};
  CHECK(point_distance(t, x, y, 2.0).distance == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("Weierstrass points of the extremal surface") {
  const auto p = paper_parameters();
  const ConeSurface s = build_extremal_dyck(p);
  const auto& w = s.marks().weierstrass;
  REQUIRE(w.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      const auto d = vertex_distance(s, w[i], w[j], 1.5);
      REQUIRE(d.finite);
      CHECK(std::abs(d.distance - 0.5) < 1e-6);
    }
  // distance to the band is attained at its boundary
  DistanceSource band;
  for (int f : s.marks().collar_faces)
    for (int c = 0; c < 3; ++c) band.vertices.push_back(s.vertex_of(f, c));
  std::sort(band.vertices.begin(), band.vertices.end());
  band.vertices.erase(std::unique(band.vertices.begin(), band.vertices.end()), band.vertices.end());
  DistanceField f(s, band, 1.0);
  for (int v : w) CHECK(f.at_vertex(v) >= p.h - 1e-6);
}

TEST_CASE("sublevel area of a flat cylinder") {
  const ConeSurface c = build_flat_cylinder(2.0, 1.0);
  const auto a = sublevel_area(c, 0.25, 0.05);
  CHECK(std::abs(a.value - 1.0) < 1e-9);
  const auto all = sublevel_area(c, 0.75, 0.05);
  CHECK(std::abs(all.value - 2.0) < 1e-9);
}

TEST_CASE("sublevel area is monotone in r") {
  const ConeSurface s = build_collar_flat(paper_parameters());
  double prev = 0.0;
  for (double r : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
    DistanceField f(s, {{}, {}, s.marks().soul}, r + 0.05);
    const double a = sublevel_area_at(s, f, r, 0.02);
    CHECK(a >= prev - 1e-12);
    prev = a;
  }
}

TEST_CASE("comparison polygons") {
  const auto sq = comparison_polygon({{1, 0}, {1, std::numbers::pi / 2}, {1, std::numbers::pi}, {1, -std::numbers::pi / 2}});
  CHECK(sq.bounded);
  CHECK(sq.area == doctest::Approx(1.0).epsilon(1e-12));
  const auto strip = comparison_polygon({{1, 0}, {1, std::numbers::pi}});
  CHECK_FALSE(strip.bounded);
}

TEST_CASE("Voronoi cells") {
  const ConeSurface t = build_flat_torus(1.0, 1.0);
  const auto one = voronoi_cells(t, {0}, 0.05);
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0].area == doctest::Approx(1.0).epsilon(1e-12));

  const auto p = paper_parameters();
  const ConeSurface s = build_extremal_dyck(p);
  const auto v = voronoi_cells(s, s.marks().weierstrass, 0.01);
  const double hex = p.h * std::sqrt(1 - 4 * p.h * p.h);
  double sum = v.excluded_area;
  for (const auto& c : v.cells) {
    CHECK(std::abs(c.area - hex) < 1e-3);
    CHECK_FALSE(c.boundary.empty());
    sum += c.area;
  }
  CHECK(std::abs(sum - s.area()) < 1e-9);
  const auto& eq = v.equidistant_vertices;
  CHECK(std::find(eq.begin(), eq.end(), *s.marks().p) != eq.end());
  CHECK(std::find(eq.begin(), eq.end(), *s.marks().q) != eq.end());
}

TEST_CASE("comparison polygon of the extremal cells") {
  const auto p = paper_parameters();
  const ConeSurface s = build_extremal_dyck(p);
  const auto& W = s.marks().weierstrass;
  const auto v = voronoi_cells(s, W, 0.01);
  const double hex = p.h * std::sqrt(1 - 4 * p.h * p.h);
  for (size_t i = 0; i < W.size(); ++i) {
    const auto cs = center_constraints(s, W[i], W);
    int quarter = 0, collar = 0;
    for (const auto& c : cs) {
      if (std::abs(c.distance - 0.5) < 1e-9) ++quarter;
      if (std::abs(c.distance - 2 * p.h) < 1e-9) ++collar;
    }
    CHECK(quarter == 4);
    CHECK(collar == 2);
    const auto poly = comparison_polygon(cs);
    CHECK(poly.bounded);
    CHECK(poly.vertices.size() == 6);
    CHECK(std::abs(poly.area - hex) < 1e-9);
    CHECK(std::abs(poly.area - v.cells[i].area) < 1e-3);
  }
  CHECK_THROWS_AS(center_constraints(s, *s.marks().p, W), GeodesicError);
}

TEST_CASE("slit double torus") {
  const ConeSurface s = build_slit_double_torus(1.2, 0.9, 4, 3, 1, 2, 2);
  CHECK(s.euler_characteristic() == -2);
  CHECK(s.closed());
  CHECK(s.area() == doctest::Approx(2 * 1.2 * 0.9).epsilon(1e-12));
  int cones = 0;
  for (double a : s.cone_angles())
    if (std::abs(a - 2 * std::numbers::pi) > 1e-9) {
      CHECK(a == doctest::Approx(4 * std::numbers::pi).epsilon(1e-12));
      ++cones;
    }
  CHECK(cones == 2);
  CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-9);
}

TEST_CASE("comparison polygons bound Voronoi cells on cone surfaces") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_real_distribution<double> U(0.6, 1.6);
    const int cols = 3 + rng() % 4, rows = 3 + rng() % 4;
    const double a = U(rng), b = U(rng);
    const int len = 1 + rng() % (cols - 1);
    const int c0 = rng() % cols, r0 = rng() % rows;
    const ConeSurface s = build_slit_double_torus(a, b, cols, rows, c0, r0, len);
    std::vector<int> smooth;
    for (int v = 0; v < s.vertex_count(); ++v)
      if (!s.is_singular(v)) smooth.push_back(v);
    std::shuffle(smooth.begin(), smooth.end(), rng);
    const std::vector<int> C(smooth.begin(), smooth.begin() + 1 + rng() % 4);
    const auto cells = voronoi_cells(s, C, 0.02, false, 2 * (a + b));
    for (size_t i = 0; i < C.size(); ++i) {
      const auto poly = comparison_polygon(center_constraints(s, C[i], C));
      REQUIRE(poly.bounded);
      CHECK(poly.area <= cells.cells[i].area + 1e-3);
    }
  }
  // flat torus: equality
  const ConeSurface t = build_flat_torus(1.3, 0.8, true);
  const std::vector<int> both{0, 1};
  const auto cells = voronoi_cells(t, both, 0.02, false);
  for (int i = 0; i < 2; ++i) {
    const double area = comparison_polygon(center_constraints(t, both[i], both)).area;
    CHECK(area == doctest::Approx(0.5 * 1.3 * 0.8).epsilon(1e-12));
    CHECK(std::abs(area - cells.cells[i].area) < 1e-3);
  }
}
