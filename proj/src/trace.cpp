#include "geodesic_internal.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dyck {

namespace detail {

Vec2 corner_direction(const ConeSurface& s, int face, int corner, double a) {
  const auto& p = s.face_coords(face);
  Vec2 e = p[(corner + 1) % 3] - p[corner];
  e = e / e.norm();
  const double c = std::cos(a), sn = std::sin(a);
  return {c * e.x - sn * e.y, sn * e.x + c * e.y};
}

double corner_local_angle(const ConeSurface& s, int face, int corner, Vec2 d) {
  const auto& p = s.face_coords(face);
  Vec2 e = p[(corner + 1) % 3] - p[corner];
  double a = std::atan2(cross(e, d), dot(e, d));
  const double ang = s.corner_angle(face, corner);
  // directions just outside the corner come from rounding
  if (a < 0) a = (a > -0.5 * (2 * std::numbers::pi - ang)) ? 0.0 : a + 2 * std::numbers::pi;
  return std::clamp(a, 0.0, ang);
}

namespace {

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  int slot = -1;
  double s = 0.0;
};

ConeIncidence make_incidence(const ConeSurface& s, int v, int segment, double in, double out) {
  const Vertex& vx = s.vertex(v);
  ConeIncidence inc;
  inc.vertex = v;
  inc.segment = segment;
  inc.in_angle = in;
  inc.out_angle = out;
  double left = std::fmod(out - in, vx.angle);
  if (left < 0) left += vx.angle;
  inc.left = left;
  inc.right = vx.angle - left;
  inc.singular = s.is_singular(v);
  return inc;
}

}  // namespace

TraceEnd trace_from(const ConeSurface& s, int face, Vec2 p, Vec2 d, int entry_slot, int start_corner, double length,
                    GeodesicPath& path, double snap) {
  double remaining = length;
  d = d / d.norm();
  const int guard_limit = 1000000;
  for (int guard = 0; guard < guard_limit; ++guard) {
    const auto& P = s.face_coords(face);
    Hit hit;
    int vertex_corner = -1;
    if (start_corner >= 0) {
      const int c = start_corner;
      const double a = corner_local_angle(s, face, c, d);
      const double ang = s.corner_angle(face, c);
      if (a < 1e-12) {
        hit = {(P[(c + 1) % 3] - P[c]).norm(), c, 1.0};
        vertex_corner = (c + 1) % 3;
      } else if (a > ang - 1e-12) {
        hit = {(P[(c + 2) % 3] - P[c]).norm(), (c + 2) % 3, 0.0};
        vertex_corner = (c + 2) % 3;
      }
    }
    if (vertex_corner < 0) {
      for (int j = 0; j < 3; ++j) {
        if (j == entry_slot) continue;
        if (start_corner >= 0 && j != (start_corner + 1) % 3) continue;
        Vec2 e = P[(j + 1) % 3] - P[j];
        double den = cross(d, e);
        if (std::abs(den) < 1e-300) continue;
        double t = cross(P[j] - p, e) / den;
        double u = cross(P[j] - p, d) / den;
        if (t > 1e-13 && u > -1e-9 && u < 1 + 1e-9 && t < hit.t) hit = {t, j, u};
      }
      if (hit.slot < 0) throw GeodesicError("trace lost: no exit edge");
      const double len = (P[(hit.slot + 1) % 3] - P[hit.slot]).norm();
      if (hit.s * len < 1e-10) vertex_corner = hit.slot;
      else if ((1 - hit.s) * len < 1e-10) vertex_corner = (hit.slot + 1) % 3;
    }

    if (remaining < hit.t - snap || (vertex_corner < 0 && remaining <= hit.t + snap)) {
      Vec2 q = p + d * std::min(remaining, hit.t);
      path.segments.push_back({face, p, q, -1});
      return {-1, 0.0, face, q, d};
    }
    if (vertex_corner >= 0) {
      const Vec2 q = P[vertex_corner];
      path.segments.push_back({face, p, q, -1});
      remaining -= hit.t;
      const int v = s.vertex_of(face, vertex_corner);
      const double a_in = corner_local_angle(s, face, vertex_corner, p - q);
      const double in = s.vertex_angle_coordinate(face, vertex_corner, a_in);
      if (std::abs(remaining) <= snap) return {v, in, face, q, d};
      if (s.vertex(v).boundary) throw GeodesicError("trace reached the boundary");
      const double out = in + std::numbers::pi;
      auto [cr, a_out] = s.corner_at_angle(v, out);
      path.incidences.push_back(make_incidence(s, v, static_cast<int>(path.segments.size()) - 1, in,
                                               std::fmod(out, s.vertex(v).angle)));
      face = cr.face;
      start_corner = cr.corner;
      entry_slot = -1;
      p = s.face_coords(face)[start_corner];
      d = corner_direction(s, face, start_corner, a_out);
      continue;
    }
    const Vec2 q = p + d * hit.t;
    path.segments.push_back({face, p, q, hit.slot});
    remaining -= hit.t;
    const EdgeRef e{face, hit.slot};
    auto partner = s.partner(e);
    if (!partner) throw GeodesicError("trace reached the boundary");
    const Iso2& T = s.transfer(e);
    p = T.apply(q);
    d = T.linear(d);
    face = partner->face;
    entry_slot = partner->slot;
    start_corner = -1;
    if (remaining <= 0) return {-1, 0.0, face, p, d};
  }
  throw GeodesicError("trace did not terminate");
}

}  // namespace detail

std::vector<int> GeodesicPath::faces() const {
  std::vector<int> out;
  for (const auto& sg : segments) out.push_back(sg.face);
  return out;
}

std::vector<int> GeodesicPath::cone_points() const {
  std::vector<int> out;
  for (const auto& inc : incidences)
    if (inc.singular) out.push_back(inc.vertex);
  return out;
}

std::string to_string(GeodesicKind k) { return k == GeodesicKind::soul ? "soul" : "saddle-chain"; }

GeodesicPath trace_line(const ConeSurface& s, SurfacePoint start, Vec2 direction, double length) {
  GeodesicPath g;
  detail::trace_from(s, start.face, start.local, direction, -1, -1, length, g);
  g.length = length;
  return g;
}

std::string check_local_geodesic(const ConeSurface& s, const GeodesicPath& g, double tol) {
  std::ostringstream err;
  const size_t n = g.segments.size();
  if (n == 0) return "empty path";
  double total = 0.0;
  for (const auto& sg : g.segments) total += (sg.exit - sg.entry).norm();
  if (std::abs(total - g.length) > tol * std::max(1.0, g.length)) {
    err << "length mismatch " << total << " vs " << g.length;
    return err.str();
  }
  auto incidence_after = [&](size_t i) -> const ConeIncidence* {
    for (const auto& inc : g.incidences)
      if (inc.segment == static_cast<int>(i)) return &inc;
    return nullptr;
  };
  const size_t joins = g.closed ? n : n - 1;
  for (size_t i = 0; i < joins; ++i) {
    const PathSegment& a = g.segments[i];
    const PathSegment& b = g.segments[(i + 1) % n];
    if (a.exit_slot >= 0) {
      auto partner = s.partner({a.face, a.exit_slot});
      if (!partner || partner->face != b.face) return "segment " + std::to_string(i) + " does not continue across its edge";
      const Iso2& T = s.transfer({a.face, a.exit_slot});
      if ((T.apply(a.exit) - b.entry).norm() > tol) return "gluing mismatch after segment " + std::to_string(i);
      Vec2 da = T.linear(a.exit - a.entry), db = b.exit - b.entry;
      if (da.norm() > tol && db.norm() > tol && std::abs(cross(da / da.norm(), db / db.norm())) > 1e-7)
        return "path bends across an edge after segment " + std::to_string(i);
      if (dot(da, db) < 0) return "path reverses after segment " + std::to_string(i);
    } else {
      const ConeIncidence* inc = incidence_after(i);
      if (!inc) return "segment " + std::to_string(i) + " ends without an edge or vertex";
      if (inc->left < std::numbers::pi - tol || inc->right < std::numbers::pi - tol)
        return "side angle below pi at vertex " + std::to_string(inc->vertex);
      bool at_a = false, at_b = false;
      for (int c = 0; c < 3; ++c) {
        if (s.vertex_of(a.face, c) == inc->vertex && (s.face_coords(a.face)[c] - a.exit).norm() < tol) at_a = true;
        if (s.vertex_of(b.face, c) == inc->vertex && (s.face_coords(b.face)[c] - b.entry).norm() < tol) at_b = true;
      }
      if (!at_a || !at_b) return "incidence at vertex " + std::to_string(inc->vertex) + " not at segment ends";
    }
  }
  return {};
}

std::string geodesics_to_json(const std::vector<GeodesicPath>& gs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& g : gs) {
    nlohmann::ordered_json j;
    j["length"] = g.length;
    j["type"] = to_string(g.kind);
    if (g.kind == GeodesicKind::soul) j["one_sided"] = g.one_sided;
    j["faces"] = g.faces();
    nlohmann::ordered_json cps = nlohmann::ordered_json::array();
    for (const auto& inc : g.incidences)
      cps.push_back({{"vertex", inc.vertex}, {"singular", inc.singular}, {"left", inc.left}, {"right", inc.right}});
    j["cone_points"] = cps;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace dyck
