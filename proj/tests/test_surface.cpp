#include "doctest.h"

#include "dyck/builders.hpp"

#include <cmath>
#include <numbers>

using namespace dyck;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("trapezoid dimensions") {
  const auto p = paper_parameters();
  const auto t = build_trapezoid(p);
  CHECK((t[2] - t[1]).norm() == doctest::Approx(0.251782650587028).epsilon(1e-12));
  CHECK((t[2] - t[3]).norm() == doctest::Approx(0.559816490590112).epsilon(1e-12));
  CHECK((t[2] - t[1]).norm() == doctest::Approx(p.h / std::sin(p.alpha)).epsilon(1e-12));

  const auto r = build_trapezoid(1.0 / 3.0, 0.1, kPi / 2);
  CHECK((r[2] - r[3]).norm() == doctest::Approx(1.0 / 3.0));

  auto bad = p;
  bad.h += 1e-6;
  CHECK_THROWS_AS(build_trapezoid(bad), SurfaceError);
}

TEST_CASE("extremal surface invariants") {
  const auto p = paper_parameters();
  for (int cols : {3, 6}) {
    const auto s = build_extremal_dyck(p, cols);
    CHECK_FALSE(s.orientable());
    CHECK(s.closed());
    CHECK(s.euler_characteristic() == -1);
    CHECK(s.area() == doctest::Approx(1.152794345841759).epsilon(1e-12));
    CHECK(std::abs(s.gauss_bonnet_residual()) < 1e-9);
    const auto angles = s.cone_angles();
    REQUIRE(angles.size() == 8);
    for (int i = 0; i < 2; ++i) CHECK(angles[i] == doctest::Approx(6.625803278417449).epsilon(1e-12));
    for (int i = 2; i < 8; ++i) CHECK(angles[i] == doctest::Approx(7.216176867963563).epsilon(1e-12));
    const auto& m = s.marks();
    REQUIRE(m.weierstrass.size() == 3);
    for (int w : m.weierstrass) CHECK_FALSE(s.is_singular(w));
    CHECK(s.vertex(*m.p).angle == doctest::Approx(6 * p.alpha));
    CHECK(s.vertex(*m.q).angle == doctest::Approx(6 * p.alpha));
    CHECK(*m.p != *m.q);
  }
}

TEST_CASE("flat torus and Klein bottle") {
  const auto t = build_flat_torus();
  CHECK(t.orientable());
  CHECK(t.euler_characteristic() == 0);
  CHECK(t.vertex_count() == 1);
  CHECK(t.vertex(0).angle == doctest::Approx(2 * kPi));
  const auto k = build_klein_bottle();
  CHECK_FALSE(k.orientable());
  CHECK(k.euler_characteristic() == 0);
  CHECK(k.vertex_count() == 1);
  CHECK(k.vertex(0).angle == doctest::Approx(2 * kPi));
}

TEST_CASE("flat collar") {
  const auto p = paper_parameters();
  const auto c = build_collar_flat(p);
  CHECK(c.orientable());
  CHECK(c.euler_characteristic() == 0);
  CHECK(c.boundary_components() == 2);
  CHECK(c.area() == doctest::Approx(2 * 1.152794345841759).epsilon(1e-12));
  CHECK(std::abs(c.gauss_bonnet_residual()) < 1e-9);
  double soul = 0;
  for (auto e : c.marks().soul) soul += c.edge_length(e);
  CHECK(soul == doctest::Approx(2.0));
  for (const auto& loop : c.boundary_loops()) {
    double len = 0;
    for (auto e : loop) len += c.edge_length(e);
    CHECK(len == doctest::Approx(6 * 0.559816490590112));
  }
}

#include "dyck/mesh_io.hpp"
#include "dyck/surgery.hpp"
#include "dyck/symmetry.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace {
std::map<long, int> angle_histogram(const ConeSurface& s) {
  std::map<long, int> h;
  for (double a : s.cone_angles()) ++h[std::lround(a * 1e8)];
  return h;
}
}  // namespace

TEST_CASE("double cover of the extremal surface") {
  const auto s = build_extremal_dyck(paper_parameters());
  const auto d = orientation_double_cover(s);
  CHECK(d.orientable());
  CHECK(d.euler_characteristic() == -2);
  CHECK(d.area() == doctest::Approx(2 * s.area()).epsilon(1e-13));
  CHECK(std::abs(d.gauss_bonnet_residual()) < 1e-9);
  auto hs = angle_histogram(s), hd = angle_histogram(d);
  REQUIRE(hs.size() == hd.size());
  for (auto [k, n] : hs) CHECK(hd[k] == 2 * n);
  CHECK(d.cone_angles().size() == 16);
  CHECK_THROWS_AS(orientation_double_cover(d), SurfaceError);
}

TEST_CASE("double cover of the Klein bottle is a torus of twice the area") {
  const auto d = orientation_double_cover(build_klein_bottle());
  CHECK(d.orientable());
  CHECK(d.euler_characteristic() == 0);
  CHECK(d.area() == doctest::Approx(2.0));
  CHECK(d.cone_angles().empty());
}

TEST_CASE("cut along the Weierstrass graph and reglue") {
  const auto s = build_extremal_dyck(paper_parameters());
  const auto g = weierstrass_graph(s);
  REQUIRE(g.paths.size() == 3);
  const auto cut = cut_along_graph(s, g);
  CHECK(cut.removed.size() == 6);
  CHECK(cut.surface.area() == doctest::Approx(s.area()).epsilon(1e-14));
  CHECK(cut.surface.boundary_components() == 1);
  CHECK(cut.surface.euler_characteristic() == 0);
  CHECK(std::abs(cut.surface.gauss_bonnet_residual()) < 1e-9);
  const auto back = reglue(cut);
  CHECK(back.structurally_equal(s));

  const auto same = cut_along_graph(s, CutGraph{});
  CHECK(same.surface.structurally_equal(s.renamed(s.name() + "_cut")));
}

TEST_CASE("torus cut along an essential loop is a cylinder") {
  const auto t = build_flat_torus();
  // bottom edge of the lower triangle is a closed loop through the vertex
  const auto c = cut_along_graph(t, CutGraph{{{EdgeRef{0, 0}}}});
  CHECK(c.surface.euler_characteristic() == 0);
  CHECK(c.surface.boundary_components() == 2);
  CHECK(c.surface.orientable());
}

TEST_CASE("cut graph validation") {
  const auto s = build_extremal_dyck(paper_parameters());
  auto g = weierstrass_graph(s);
  CutGraph dangling{{{g.paths[0][0]}}};
  CHECK_THROWS_AS(cut_along_graph(s, dangling), SurfaceError);
  CutGraph twice{{g.paths[0], g.paths[0]}};
  CHECK_THROWS_AS(cut_along_graph(s, twice), SurfaceError);
}

TEST_CASE("refinement preserves geometry and marks") {
  const auto s = build_extremal_dyck(paper_parameters());
  const auto r = refine(s, 3);
  CHECK(r.face_count() == 9 * s.face_count());
  CHECK(r.area() == doctest::Approx(s.area()).epsilon(1e-13));
  CHECK(r.euler_characteristic() == -1);
  CHECK(angle_histogram(r) == angle_histogram(s));
  CHECK(r.vertex(*r.marks().p).angle == doctest::Approx(s.vertex(*s.marks().p).angle));
  for (int w : r.marks().weierstrass) CHECK_FALSE(r.is_singular(w));
  CHECK(r.marks().collar_faces.size() == 9 * s.marks().collar_faces.size());

  const auto c = build_collar_flat(paper_parameters());
  const auto rc = refine(c, 2);
  double soul = 0;
  for (auto e : rc.marks().soul) soul += rc.edge_length(e);
  CHECK(soul == doctest::Approx(2.0));
  CHECK(rc.boundary_components() == 2);
}

TEST_CASE("face relabeling keeps invariants") {
  const auto s = build_extremal_dyck(paper_parameters());
  std::vector<int> perm(s.face_count());
  for (int f = 0; f < s.face_count(); ++f) perm[f] = (7 * f + 3) % s.face_count();
  const auto r = relabel_faces(s, perm, 1);
  CHECK(angle_histogram(r) == angle_histogram(s));
  CHECK(r.vertex(*r.marks().p).angle == doctest::Approx(s.vertex(*s.marks().p).angle));
}

TEST_CASE("symmetry group orders") {
  const auto s = build_extremal_dyck(paper_parameters());
  const auto rep = check_symmetry(s);
  CHECK(rep.order == 12);
  CHECK(rep.confirmed);

  // lengthen one glued edge on both sides
  auto lengths = s.lengths();
  const Gluing g0 = s.gluings().front();
  lengths[g0.a.face][g0.a.slot] *= 1.0 + 1e-6;
  lengths[g0.b.face][g0.b.slot] = lengths[g0.a.face][g0.a.slot];
  const ConeSurface bent("bent", lengths, s.gluings(), s.marks());
  const auto broken = check_symmetry(bent);
  CHECK(broken.order < 12);
  CHECK_FALSE(broken.confirmed);

  CHECK(check_symmetry(build_extremal_dyck(paper_parameters(), 6)).order == 12);
  CHECK(check_symmetry(build_flat_torus(1.0, 1.0, true), 8).order >= 8);
}

TEST_CASE("mesh JSON round trip and OBJ") {
  const auto s = build_extremal_dyck(paper_parameters());
  const auto back = from_json(to_json(s));
  CHECK(back.structurally_equal(s, 0.0));
  CHECK(back.name() == s.name());
  const std::string obj = to_obj(s);
  int faces = 0;
  std::istringstream in(obj);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("f ", 0) == 0) ++faces;
  CHECK(faces == s.face_count());
  CHECK_THROWS_AS(from_json("{\"name\": 1}"), SurfaceError);
}

TEST_CASE("Klein bottle JSON matches golden file") {
  std::ifstream in(std::filesystem::path(DYCK_GOLDEN_DIR) / "klein_bottle.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(to_json(build_klein_bottle()) == ss.str());
}

TEST_CASE("generic collar pipeline agrees with the direct assembly") {
  const auto p = paper_parameters();
  const auto s = build_extremal_dyck(p);
  const auto cover = orientation_double_cover(s);
  const auto generic = cut_along_graph(cover, lift_to_double_cover(s, weierstrass_graph(s))).surface;
  const auto direct = build_collar_flat(p);
  CHECK(generic.orientable());
  CHECK(generic.euler_characteristic() == direct.euler_characteristic());
  CHECK(generic.boundary_components() == 2);
  CHECK(generic.area() == doctest::Approx(direct.area()).epsilon(1e-13));
  auto loop_lengths = [](const ConeSurface& c) {
    std::vector<double> out;
    for (const auto& loop : c.boundary_loops()) {
      double len = 0;
      for (auto e : loop) len += c.edge_length(e);
      out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto lg = loop_lengths(generic), ld = loop_lengths(direct);
  REQUIRE(lg.size() == ld.size());
  for (size_t i = 0; i < lg.size(); ++i) CHECK(lg[i] == doctest::Approx(ld[i]).epsilon(1e-12));
  CHECK(angle_histogram(generic) == angle_histogram(direct));
  auto boundary_angles = [](const ConeSurface& c) {
    std::map<long, int> h;
    for (const auto& v : c.vertices())
      if (v.boundary && std::abs(v.angle - kPi) > 1e-9) ++h[std::lround(v.angle * 1e8)];
    return h;
  };
  CHECK(boundary_angles(generic) == boundary_angles(direct));
}
