#include "dyck/geodesic.hpp"
#include "windows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <tuple>

namespace dyck {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool bends(const ConeSurface& s, int v) {
  const Vertex& vx = s.vertex(v);
  const double full = vx.boundary ? std::numbers::pi : 2 * std::numbers::pi;
  return vx.angle > full + 1e-9;
}

}  // namespace

struct DistanceField::Impl {
  explicit Impl(const ConeSurface& s) : surface(s) {}
  ConeSurface surface;
  double radius = 0.0;
  bool partial = false;
  std::vector<double> vdist;
  std::vector<std::vector<detail::Window>> windows;
};

DistanceField::DistanceField(const ConeSurface& s, const DistanceSource& src, double radius, long budget)
    : impl_(std::make_unique<Impl>(s)) {
  impl_->radius = radius;
  const ConeSurface& surf = impl_->surface;
  auto& vdist = impl_->vdist;
  vdist.assign(surf.vertex_count(), inf);

  detail::Propagator prop(surf, radius, budget, true);
  prop.vertex_bound = &vdist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::vector<char> settled(surf.vertex_count(), 0);
  prop.on_hit = [&](const detail::Window&, int face, int corner, double d) {
    const int v = surf.vertex_of(face, corner);
    if (d < vdist[v] - 1e-14) {
      vdist[v] = d;
      if (!settled[v] && bends(surf, v) && d <= radius) queue.push({d, v});
    }
  };

  std::vector<int> source_vertices = src.vertices;
  for (EdgeRef e : src.edges) {
    source_vertices.push_back(surf.vertex_of(e.face, e.slot));
    source_vertices.push_back(surf.vertex_of(e.face, (e.slot + 1) % 3));
  }
  std::sort(source_vertices.begin(), source_vertices.end());
  source_vertices.erase(std::unique(source_vertices.begin(), source_vertices.end()), source_vertices.end());
  for (int v : source_vertices) vdist[v] = 0.0;
  for (int v : source_vertices) {
    settled[v] = 1;
    prop.emit_vertex(v, 0.0);
  }
  for (EdgeRef e : src.edges) prop.emit_edge(e, 0.0);
  for (const SurfacePoint& p : src.points) prop.emit_point(p.face, p.local, 0.0);

  while (!queue.empty() && !prop.exhausted()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (settled[v] || d > vdist[v]) continue;
    settled[v] = 1;
    prop.emit_vertex(v, d);
  }
  impl_->partial = prop.exhausted();
  impl_->windows = prop.windows();
}

DistanceField::~DistanceField() = default;
DistanceField::DistanceField(DistanceField&&) noexcept = default;
DistanceField& DistanceField::operator=(DistanceField&&) noexcept = default;

double DistanceField::at(int face, Vec2 x) const {
  double best = inf;
  const auto& P = impl_->surface.face_coords(face);
  for (int c = 0; c < 3; ++c) {
    const double dv = impl_->vdist[impl_->surface.vertex_of(face, c)];
    if (dv < inf && (P[c] - x).norm() < 1e-12) best = std::min(best, dv);
  }
  for (const auto& w : impl_->windows[face])
    if (w.contains(x, 1e-12)) best = std::min(best, w.distance(x));
  return best > impl_->radius + 1e-12 ? inf : best;
}

double DistanceField::at_vertex(int v) const {
  const double d = impl_->vdist[v];
  return d > impl_->radius + 1e-12 ? inf : d;
}

double DistanceField::radius() const { return impl_->radius; }
bool DistanceField::partial() const { return impl_->partial; }

DistanceResult point_distance(const ConeSurface& s, SurfacePoint x, SurfacePoint y, double l_max) {
  DistanceField f(s, {{}, {x}, {}}, l_max);
  if (f.partial()) throw GeodesicError("distance search exceeded its budget");
  const double d = f.at(y.face, y.local);
  return {d < inf, d};
}

DistanceResult vertex_distance(const ConeSurface& s, int v, int w, double l_max) {
  DistanceField f(s, {{v}, {}, {}}, l_max);
  if (f.partial()) throw GeodesicError("distance search exceeded its budget");
  const double d = f.at_vertex(w);
  return {d < inf, d};
}

namespace {

/// Barycentric sampling grid of one face with n subdivisions per side.
struct FaceGrid {
  int n = 1;
  std::vector<Vec2> points;

  int index(int i, int j) const { return i * (n + 1) - i * (i - 1) / 2 + j; }

  FaceGrid(const ConeSurface& s, int face, double mesh_h) {
    const auto& P = s.face_coords(face);
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) longest = std::max(longest, s.edge_length({face, k}));
    n = std::max(1, static_cast<int>(std::ceil(longest / mesh_h - 1e-9)));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j + i <= n; ++j) points.push_back(P[0] + (P[1] - P[0]) * (double(i) / n) + (P[2] - P[0]) * (double(j) / n));
  }

  template <class F>
  void for_each_triangle(F&& f) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + i < n; ++j) {
        f(index(i, j), index(i + 1, j), index(i, j + 1));
        if (i + j + 1 < n) f(index(i + 1, j), index(i + 1, j + 1), index(i, j + 1));
      }
  }
};

struct Valued {
  Vec2 p;
  std::vector<double> g;  // linear functions; region is g >= 0
};

/// Clips a polygon carrying linear function samples against g[k] >= 0.
std::vector<Valued> clip(const std::vector<Valued>& poly, size_t k) {
  std::vector<Valued> out;
  const size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const Valued& a = poly[i];
    const Valued& b = poly[(i + 1) % m];
    const bool ia = a.g[k] >= 0, ib = b.g[k] >= 0;
    if (ia) out.push_back(a);
    if (ia != ib) {
      const double t = a.g[k] / (a.g[k] - b.g[k]);
      Valued c{a.p + (b.p - a.p) * t, a.g};
      for (size_t q = 0; q < a.g.size(); ++q) c.g[q] = a.g[q] + (b.g[q] - a.g[q]) * t;
      c.g[k] = 0.0;
      out.push_back(std::move(c));
    }
  }
  return out;
}

double area_of(const std::vector<Valued>& poly) {
  std::vector<Vec2> pts;
  for (const auto& v : poly) pts.push_back(v.p);
  return pts.size() < 3 ? 0.0 : polygon_area(pts);
}

std::vector<double> sample(const ConeSurface& s, const DistanceField& f, int face, const FaceGrid& grid,
                           double cap) {
  std::vector<double> vals;
  vals.reserve(grid.points.size());
  const auto& P = s.face_coords(face);
  for (const Vec2& x : grid.points) {
    double d = inf;
    for (int c = 0; c < 3; ++c)
      if ((P[c] - x).norm() < 1e-12) d = f.at_vertex(s.vertex_of(face, c));
    if (d == inf) d = f.at(face, x);
    vals.push_back(std::min(d, cap));
  }
  return vals;
}

}  // namespace

double sublevel_area_at(const ConeSurface& s, const DistanceField& f, double r, double mesh_h) {
  double total = 0.0;
  const double cap = f.radius() + 1.0;
  for (int face = 0; face < s.face_count(); ++face) {
    FaceGrid grid(s, face, mesh_h);
    const auto vals = sample(s, f, face, grid, cap);
    grid.for_each_triangle([&](int a, int b, int c) {
      std::vector<Valued> poly{{grid.points[a], {r - vals[a]}}, {grid.points[b], {r - vals[b]}},
                               {grid.points[c], {r - vals[c]}}};
      total += area_of(clip(poly, 0));
    });
  }
  return total;
}

AreaEstimate sublevel_area(const ConeSurface& s, const DistanceSource& c, double r, double mesh_h) {
  if (!(r > 0) || !(mesh_h > 0)) throw GeodesicError("sublevel_area needs r > 0 and mesh_h > 0");
  DistanceField f(s, c, r + 2 * mesh_h);
  if (f.partial()) throw GeodesicError("distance field exceeded its budget");
  AreaEstimate est;
  est.mesh_h = mesh_h;
  est.coarse = sublevel_area_at(s, f, r, mesh_h);
  est.fine = sublevel_area_at(s, f, r, mesh_h / 2);
  est.value = (4 * est.fine - est.coarse) / 3;
  est.error = std::abs(est.fine - est.coarse);
  return est;
}

AreaEstimate sublevel_area(const ConeSurface& s, double r, double mesh_h) {
  if (s.marks().soul.empty()) throw GeodesicError("surface has no marked soul curve");
  return sublevel_area(s, DistanceSource{{}, {}, s.marks().soul}, r, mesh_h);
}

VoronoiResult voronoi_cells(const ConeSurface& s, const std::vector<int>& centers, double mesh_h, bool exclude_collar,
                            double radius) {
  const size_t m = centers.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (centers[i] == centers[j]) throw GeodesicError("voronoi centers must be distinct");
  std::vector<DistanceField> fields;
  for (int c : centers) {
    fields.emplace_back(s, DistanceSource{{c}, {}, {}}, radius);
    if (fields.back().partial()) throw GeodesicError("distance field exceeded its budget");
  }
  VoronoiResult res;
  for (size_t i = 0; i < m; ++i) res.cells.push_back({centers[i], 0.0, {}});

  std::vector<char> excluded(s.face_count(), 0);
  if (exclude_collar)
    for (int f : s.marks().collar_faces) excluded[f] = 1;
  const double cap = radius + 1.0;

  for (int face = 0; face < s.face_count(); ++face) {
    if (excluded[face]) {
      res.excluded_area += s.face_area(face);
      continue;
    }
    FaceGrid grid(s, face, mesh_h);
    std::vector<std::vector<double>> vals;
    for (const auto& f : fields) vals.push_back(sample(s, f, face, grid, cap));
    grid.for_each_triangle([&](int a, int b, int c) {
      const int idx[3] = {a, b, c};
      for (size_t i = 0; i < m; ++i) {
        // g[j] = f_j - f_i >= 0 for j != i
        std::vector<Valued> poly;
        for (int k : idx) {
          Valued v{grid.points[k], std::vector<double>(m)};
          for (size_t j = 0; j < m; ++j) v.g[j] = vals[j][k] - vals[i][k];
          poly.push_back(std::move(v));
        }
        for (size_t j = 0; j < m && poly.size() >= 3; ++j)
          if (j != i) poly = clip(poly, j);
        if (poly.size() < 3) continue;
        res.cells[i].area += area_of(poly);
        for (size_t j = i + 1; j < m; ++j) {
          std::vector<Vec2> on;
          for (const auto& v : poly)
            if (std::abs(v.g[j]) < 1e-12) on.push_back(v.p);
          if (on.size() >= 2 && (on.front() - on.back()).norm() > 1e-14) {
            res.cells[i].boundary.push_back({face, on.front(), on.back(), centers[j]});
            res.cells[j].boundary.push_back({face, on.back(), on.front(), centers[i]});
          }
        }
      }
    });
  }

  for (int v = 0; v < s.vertex_count(); ++v) {
    std::vector<double> d;
    for (const auto& f : fields) d.push_back(f.at_vertex(v));
    std::sort(d.begin(), d.end());
    if (m >= 2 && d[0] < inf && d[1] - d[0] < 1e-7) res.equidistant_vertices.push_back(v);
  }
  return res;
}

ComparisonPolygon comparison_polygon(const std::vector<HalfPlane>& constraints) {
  if (constraints.size() < 2) throw GeodesicError("comparison polygon needs at least two constraints");
  ComparisonPolygon out;
  std::vector<double> angles;
  double extent = 1.0;
  for (const auto& c : constraints) {
    if (!(c.distance > 0)) throw GeodesicError("center distances must be positive");
    double a = std::fmod(c.angle, 2 * std::numbers::pi);
    if (a < 0) a += 2 * std::numbers::pi;
    angles.push_back(a);
    extent += c.distance;
  }
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2 * std::numbers::pi - angles.back();
  for (size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  if (gap >= std::numbers::pi - 1e-12) {
    out.area = inf;
    return out;
  }
  std::vector<Vec2> poly{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
  for (const auto& c : constraints) {
    const Vec2 u{std::cos(c.angle), std::sin(c.angle)};
    poly = clip_halfplane(poly, -u, c.distance / 2);
  }
  out.bounded = true;
  out.vertices = poly;
  out.area = polygon_area(poly);
  return out;
}

std::vector<HalfPlane> center_constraints(const ConeSurface& s, int center, const std::vector<int>& centers,
                                          double radius, bool exclude_collar) {
  if (center < 0 || center >= s.vertex_count()) throw GeodesicError("center is not a vertex");
  if (s.is_singular(center)) throw GeodesicError("comparison constraints need a smooth center");
  std::vector<char> is_center(s.vertex_count(), 0);
  for (int c : centers) is_center.at(c) = 1;
  if (radius <= 0.0) radius = 2.0 * covering_radius(s, centers) + 0.02;

  std::vector<HalfPlane> raw;
  auto coordinate = [&](int face, int corner, Vec2 dir) {
    const auto& P = s.face_coords(face);
    const Vec2 e = P[(corner + 1) % 3] - P[corner];
    const double a = std::atan2(cross(e, dir), dot(e, dir));
    return s.vertex_angle_coordinate(face, corner, std::clamp(a, 0.0, s.corner_angle(face, corner)));
  };

  // Geodesics bend at cone points of angle > 2 pi; window root = initial
  // direction at the center, NaN while still straight from it.
  struct Bend {
    int v;
    double sigma, lo, hi, root;
  };
  std::vector<Bend> pending;
  detail::Propagator to_centers(s, radius, 50'000'000, false);
  to_centers.boundary_hits = true;
  to_centers.on_hit = [&](const detail::Window& w, int face, int corner, double d) {
    if (d > radius || d <= 1e-12) return;
    const int v = s.vertex_of(face, corner);
    double root = w.root;
    if (std::isnan(root)) {
      const Vec2 x = w.to_emit.apply(s.face_coords(face)[corner]);
      const Vec2 o = s.face_coords(w.emit_face)[w.emit_corner];
      root = coordinate(w.emit_face, w.emit_corner, x - o);
    }
    if (is_center[v]) raw.push_back({d, root});
    const double angle = s.vertex(v).angle;
    if (s.vertex(v).boundary || angle <= 2 * std::numbers::pi + 1e-9) return;
    const Vec2 A = s.face_coords(face)[corner];
    const double in = coordinate(face, corner, w.foot(A) - A);
    pending.push_back({v, d, in + std::numbers::pi, in + angle - std::numbers::pi, root});
  };
  to_centers.emit_sector(center, 0.0, 0.0, s.vertex(center).angle, std::numeric_limits<double>::quiet_NaN());
  while (!pending.empty()) {
    const Bend b = pending.back();
    pending.pop_back();
    to_centers.emit_sector(b.v, b.sigma, b.lo, b.hi, b.root);
  }
  if (to_centers.exhausted()) throw GeodesicError("center_constraints: propagation budget exhausted");

  if (exclude_collar && !s.marks().collar_faces.empty()) {
    std::vector<char> collar(s.face_count(), 0);
    for (int f : s.marks().collar_faces) collar.at(f) = 1;
    detail::Propagator to_collar(s, 0.5 * radius, 50'000'000, false);
    to_collar.boundary_hits = true;
    to_collar.on_hit = [&](const detail::Window& w, int face, int corner, double d) {
      if (d > 0.5 * radius || s.vertex_of(face, corner) != center) return;
      raw.push_back({2.0 * d, coordinate(face, corner, -w.normal)});
    };
    for (int f = 0; f < s.face_count(); ++f) {
      if (collar[f]) continue;
      for (int j = 0; j < 3; ++j) {
        auto p = s.partner({f, j});
        if (p && collar[p->face]) to_collar.emit_edge({f, j}, 0.0, false);
      }
    }
  }

  std::sort(raw.begin(), raw.end(), [](const HalfPlane& a, const HalfPlane& b) {
    return std::tie(a.angle, a.distance) < std::tie(b.angle, b.distance);
  });
  std::vector<HalfPlane> out;
  for (const HalfPlane& h : raw) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const HalfPlane& o) {
      double da = std::abs(o.angle - h.angle);
      da = std::min(da, 2 * std::numbers::pi - da);
      return da < 1e-9 && std::abs(o.distance - h.distance) < 1e-9;
    });
    if (!dup) out.push_back(h);
  }
  return out;
}

double covering_radius(const ConeSurface& s, const std::vector<int>& centers, double mesh_h) {
  if (centers.empty()) throw GeodesicError("covering radius needs a center");
  double longest = 0.0;
  for (const auto& l : s.lengths()) longest = std::max({longest, l[0], l[1], l[2]});
  const DistanceField f(s, {centers, {}, {}}, 2.0 * longest * s.face_count() + 1.0);
  double best = 0.0;
  for (int face = 0; face < s.face_count(); ++face) {
    const auto& P = s.face_coords(face);
    const double edge = std::max({s.lengths()[face][0], s.lengths()[face][1], s.lengths()[face][2]});
    const int n = std::max(1, static_cast<int>(std::ceil(edge / mesh_h)));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        const Vec2 x = P[0] + (P[1] - P[0]) * (double(i) / n) + (P[2] - P[0]) * (double(j) / n);
        best = std::max(best, f.at(face, x));
      }
  }
  if (!std::isfinite(best)) throw GeodesicError("covering radius: surface not reached from the centers");
  return best + mesh_h;
}

}  // namespace dyck
