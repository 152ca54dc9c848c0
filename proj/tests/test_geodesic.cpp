#include "dyck/builders.hpp"
#include "dyck/constants.hpp"
#include "dyck/geodesic.hpp"
#include "dyck/surgery.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace dyck;

namespace {

EnumerationResult enumerate(const ConeSurface& s, double l_max) {
  EnumerationOptions o;
  o.l_max = l_max;
  return enumerate_closed_geodesics(s, o);
}

std::vector<double> lengths(const EnumerationResult& r) {
  std::vector<double> out;
  for (const auto& g : r.geodesics) out.push_back(g.length);
  return out;
}

void require_local_geodesics(const ConeSurface& s, const EnumerationResult& r) {
  for (const auto& g : r.geodesics) {
    INFO("length " << g.length);
    CHECK(check_local_geodesic(s, g, 1e-9) == "");
    CHECK(g.closed);
  }
}

// cosine between the geodesic and slot `slot` of the first segment in a face
// satisfying `pick`
template <class Pick>
std::optional<double> cos_to_slot(const ConeSurface& s, const GeodesicPath& g, Pick pick, int slot) {
  for (const auto& sg : g.segments) {
    if (!pick(sg.face)) continue;
    const auto& P = s.face_coords(sg.face);
    const Vec2 d = sg.exit - sg.entry, e = P[(slot + 1) % 3] - P[slot];
    if (d.norm() < 1e-9) continue;
    return dot(d, e) / (d.norm() * e.norm());
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("closed geodesics of the unit square torus") {
  for (bool star : {false, true}) {
    const ConeSurface t = build_flat_torus(1.0, 1.0, star);
    const auto r = enumerate(t, 1.5);
    CHECK_FALSE(r.partial);
    const auto l = lengths(r);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(l[3] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    for (const auto& g : r.geodesics) CHECK(g.kind == GeodesicKind::soul);
    require_local_geodesics(t, r);
  }
}

TEST_CASE("primitive lattice directions of the torus up to length 3") {
  const auto r = enumerate(build_flat_torus(1.0, 1.0, true), 3.0);
  int expected = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      if ((a > 0 || b > 0) && std::gcd(a, std::abs(b)) == 1 && std::hypot(a, b) <= 3.0) ++expected;
  CHECK(static_cast<int>(r.geodesics.size()) == expected);
}

TEST_CASE("Klein bottle systole and one-sided curves") {
  const ConeSurface k = build_klein_bottle();
  const auto r = enumerate(k, 1.5);
  REQUIRE(r.geodesics.size() == 3);
  int one_sided = 0;
  for (const auto& g : r.geodesics) {
    CHECK(g.length == doctest::Approx(1.0).epsilon(1e-12));
    one_sided += g.one_sided;
  }
  CHECK(one_sided == 2);
  require_local_geodesics(k, r);
  const auto sys = systole(k, {});
  REQUIRE(sys.found);
  CHECK(sys.length == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extremal surface has unit systole and all three loop families") {
  const auto p = paper_parameters();
  const ConeSurface s = build_extremal_dyck(p);
  const auto r = enumerate(s, 1.2);
  CHECK_FALSE(r.partial);
  REQUIRE_FALSE(r.geodesics.empty());
  CHECK(std::abs(r.geodesics.front().length - 1.0) < 1e-6);
  for (const auto& g : r.geodesics) CHECK(g.length > 1.0 - 1e-6);
  require_local_geodesics(s, r);

  const auto& collar = s.marks().collar_faces;
  auto in_collar = [&](int f) { return std::find(collar.begin(), collar.end(), f) != collar.end(); };
  // trapezoid k occupies faces 3k (base), 3k + 1 (right leg), 3k + 2 (left leg)
  auto base_face = [&](int f) { return !in_collar(f) && f % 3 == 0; };
  auto leg_face = [&](int f) { return !in_collar(f) && f % 3 == 1; };

  bool soul = false, base_loop = false, leg_loop = false;
  for (const auto& g : r.geodesics) {
    if (std::abs(g.length - 1.0) > 1e-6 || g.kind != GeodesicKind::soul) continue;
    const auto faces = g.faces();
    if (g.one_sided && std::all_of(faces.begin(), faces.end(), in_collar)) soul = true;
    if (auto c = cos_to_slot(s, g, base_face, 0); c && std::abs(*c) < 1e-9) base_loop = true;
    if (auto c = cos_to_slot(s, g, leg_face, 0); c && std::abs(*c) < 1e-9 && !g.one_sided) leg_loop = true;
  }
  CHECK(soul);
  CHECK(base_loop);
  CHECK(leg_loop);

  const auto sys = systole(s, {});
  REQUIRE(sys.found);
  CHECK(std::abs(sys.length - 1.0) < 1e-6);
  const double ratio = 12 / (12 + std::sqrt(169 - 38 * std::sqrt(19.0)));
  CHECK(std::abs(sys.length * sys.length / s.area() - ratio) < 1e-9);
}

TEST_CASE("enumeration is monotone in L_max and stable under refinement") {
  const ConeSurface s = build_extremal_dyck(paper_parameters());
  const auto small = lengths(enumerate(s, 1.5));
  const auto large = lengths(enumerate(s, 2.0));
  REQUIRE(small.size() <= large.size());
  for (size_t i = 0; i < small.size(); ++i) CHECK(small[i] == doctest::Approx(large[i]).epsilon(1e-9));

  const auto base = lengths(enumerate(s, 1.2));
  for (const ConeSurface& t : {refine(s, 2), build_extremal_dyck(paper_parameters(), 6)}) {
    const auto l = lengths(enumerate(t, 1.2));
    REQUIRE(l.size() == base.size());
    for (size_t i = 0; i < l.size(); ++i) CHECK(l[i] == doctest::Approx(base[i]).epsilon(1e-9));
  }
  std::vector<int> perm(s.face_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const auto relabeled = systole(relabel_faces(s, perm, true), {});
  CHECK(std::abs(relabeled.length - 1.0) < 1e-6);
}

TEST_CASE("orientation double cover keeps the systole") {
  const ConeSurface c = orientation_double_cover(build_extremal_dyck(paper_parameters()));
  const auto sys = systole(c, {});
  REQUIRE(sys.found);
  CHECK(std::abs(sys.length - 1.0) < 1e-6);
  for (const auto& g : enumerate(c, 1.2).geodesics) CHECK_FALSE(g.one_sided);
}

TEST_CASE("systole refuses positive curvature and boundary") {
  // doubled equilateral triangle: three cone points of angle 2 pi / 3
  SurfaceBuilder b;
  const double h = std::sqrt(3.0) / 2;
  b.add_face({0, 0}, {1, 0}, {0.5, h});
  b.add_face({0, 0}, {1, 0}, {0.5, h});
  b.glue(0, 0, 1, 1, 1, 0);
  b.glue(0, 1, 2, 1, 0, 2);
  b.glue(0, 2, 0, 1, 2, 1);
  const ConeSurface tet = b.build("pillow");
  CHECK_THROWS_AS(systole(tet, {}), GeodesicError);
  CHECK_THROWS_AS(systole(build_flat_cylinder(2.0, 1.0), {}), GeodesicError);
}

TEST_CASE("budget exhaustion is reported") {
  EnumerationOptions o;
  o.l_max = 3.0;
  o.budget = 1000;
  const auto r = enumerate_closed_geodesics(build_extremal_dyck(paper_parameters()), o);
  CHECK(r.partial);
}

TEST_CASE("threaded enumeration matches the serial one") {
  const ConeSurface s = build_extremal_dyck(paper_parameters());
  EnumerationOptions o;
  o.l_max = 2.0;
  const auto serial = enumerate_closed_geodesics(s, o);
  o.threads = 4;
  const auto threaded = enumerate_closed_geodesics(s, o);
  REQUIRE(serial.geodesics.size() == threaded.geodesics.size());
  for (size_t i = 0; i < serial.geodesics.size(); ++i) {
    CHECK(serial.geodesics[i].length == threaded.geodesics[i].length);
    CHECK(serial.geodesics[i].faces() == threaded.geodesics[i].faces());
  }
}

TEST_CASE("geodesic JSON records") {
  const auto r = enumerate(build_klein_bottle(), 1.2);
  const std::string js = geodesics_to_json(r.geodesics);
  CHECK(js.find("\"type\": \"soul\"") != std::string::npos);
  CHECK(js.find("\"one_sided\": true") != std::string::npos);
  CHECK(js.find("\"cone_points\"") != std::string::npos);
}

TEST_CASE("trace_line continues straight through smooth vertices") {
  const ConeSurface t = build_flat_torus(1.0, 1.0);
  const auto g = trace_line(t, {0, {0.5, 0.25}}, {1, 0}, 3.0);
  CHECK(check_local_geodesic(t, g, 1e-9) == "");
  double total = 0.0;
  for (const auto& sg : g.segments) total += (sg.exit - sg.entry).norm();
  CHECK(total == doctest::Approx(3.0).epsilon(1e-12));
}
