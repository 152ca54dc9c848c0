#include "geodesic_internal.hpp"
#include "windows.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <thread>

namespace dyck {

namespace {

constexpr double pi = std::numbers::pi;

double angle_mod(double a, double period) {
  a = std::fmod(a, period);
  if (a < 0) a += period;
  return a;
}

double angle_gap(double a, double b, double period) {
  const double d = angle_mod(a - b, period);
  return std::min(d, period - d);
}

// --- vertex-free closed geodesics: line corridors --------------------------
//
// Lines crossing the start edge upward are x = u + w y in the start frame,
// where the edge is [0, len] x {0}. Vertex P lies left of the line iff
// u + w P.y - P.x > 0.

struct Constraint {
  Vec2 p;
  int vertex;
  bool left;
};

struct EdgeImage {
  EdgeRef edge;
  Iso2 phi;  // face-local -> frame
};

struct Crossing {
  EdgeRef edge;  // canonical side
  double t0, t1;
  bool soft0, soft1;
  double angle;  // direction mod pi in the canonical face
};

struct Piece {
  bool glide = false;
  double length = 0.0;
  EdgeRef start;
  Iso2 frame_to_local;
  double u0 = 0.0, u1 = 0.0, w = 0.0;
  double start_length = 0.0;
  std::vector<Crossing> crossings;
};

bool maps_line_to_itself(const Iso2& g, double u, double w) {
  const Vec2 p0{u, 0.0}, d{w, 1.0};
  const Vec2 p1 = g.apply(p0), dd = g.linear(d);
  const double n2 = d.norm2();
  return std::abs(cross(d, dd)) < 1e-9 * n2 && dot(d, dd) > 0 && std::abs(cross(d, p1 - p0)) < 1e-9 * std::sqrt(n2);
}

class CorridorSearch {
 public:
  CorridorSearch(const ConeSurface& s, double l_max, double w_max, std::atomic<long>& steps, long budget)
      : s_(s), l_max_(l_max), w_max_(w_max), steps_(steps), budget_(budget) {}

  void run(EdgeRef start) {
    if (!s_.partner(start)) return;
    start_ = start;
    const auto& P = s_.face_coords(start.face);
    const Vec2 a = P[start.slot], b = P[(start.slot + 1) % 3];
    len_ = (b - a).norm();
    T0_ = Iso2::from_segment(a, b, {0, 0}, {len_, 0}, false);
    cons_ = {{{0, 0}, s_.vertex_of(start.face, start.slot), true},
             {{len_, 0}, s_.vertex_of(start.face, (start.slot + 1) % 3), false}};
    edges_ = {{start, T0_}};
    reentries_.clear();
    visit(start.face, start.slot, T0_, {{0, -w_max_}, {len_, -w_max_}, {len_, w_max_}, {0, w_max_}});
  }

  std::vector<Piece> pieces;
  bool exhausted = false;

 private:
  void visit(int G, int s_in, const Iso2& phi, const std::vector<Vec2>& Q) {
    if (++steps_ > budget_) {
      exhausted = true;
      return;
    }
    const auto& P = s_.face_coords(G);
    const int a = (s_in + 2) % 3;
    const Vec2 A = phi.apply(P[a]);
    const int vA = s_.vertex_of(G, a);
    for (int branch = 0; branch < 2 && !exhausted; ++branch) {
      const bool left = branch == 0;
      // A left of the line: exit through slot s_in + 1, or slot a when the
      // face image is mirrored
      const auto Qb = left ? clip_halfplane(Q, {1, A.y}, -A.x) : clip_halfplane(Q, {-1, -A.y}, A.x);
      if (Qb.size() < 3 || polygon_area(Qb) < 1e-18) continue;
      const int x = left != phi.reflects() ? (s_in + 1) % 3 : a;
      const Vec2 E0 = phi.apply(P[x]), E1 = phi.apply(P[(x + 1) % 3]);
      if (segment_segment_distance({0, 0}, {len_, 0}, E0, E1) > l_max_ + 1e-9) continue;
      const auto partner = s_.partner({G, x});
      if (!partner) continue;
      const Iso2 phi_h = phi * s_.transfer(*partner);
      cons_.push_back({A, vA, left});
      edges_.push_back({{G, x}, phi});
      if (*partner == start_) {
        const Iso2 g = phi_h * T0_.inverse();
        close(g, Qb);
        reentries_.push_back(g);
        visit(partner->face, partner->slot, phi_h, Qb);
        reentries_.pop_back();
      } else {
        visit(partner->face, partner->slot, phi_h, Qb);
      }
      edges_.pop_back();
      cons_.pop_back();
    }
  }

  bool primitive(double u, double w) const {
    for (const Iso2& g : reentries_)
      if (maps_line_to_itself(g, u, w)) return false;
    return true;
  }

  void close(const Iso2& g, const std::vector<Vec2>& Q) {
    (void)Q;
    if (!g.reflects()) {
      if (std::abs(g.a - 1) > 1e-9 || std::abs(g.b) > 1e-9 || std::abs(g.c) > 1e-9 || std::abs(g.d - 1) > 1e-9) return;
      const Vec2 tau = g.t;
      if (tau.y <= 1e-12 || tau.norm() > l_max_ + 1e-9) return;
      const double w = tau.x / tau.y;
      if (std::abs(w) > w_max_) return;
      double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
      for (const auto& c : cons_) {
        const double b = c.p.x - w * c.p.y;
        if (c.left) lo = std::max(lo, b);
        else hi = std::min(hi, b);
      }
      if (hi - lo <= 1e-12) return;
      bool soft_lo = true, soft_hi = true;
      for (const auto& c : cons_) {
        const double b = c.p.x - w * c.p.y;
        if (c.left && b > lo - 1e-9 && s_.is_singular(c.vertex)) soft_lo = false;
        if (!c.left && b < hi + 1e-9 && s_.is_singular(c.vertex)) soft_hi = false;
      }
      if (!primitive(lo + 0.382 * (hi - lo), w)) return;
      record(false, tau.norm(), lo, hi, w, soft_lo, soft_hi);
    } else {
      double phi = std::atan2(g.c, g.a) / 2;
      Vec2 e{std::cos(phi), std::sin(phi)};
      if (e.y < 0) e = -e;
      if (e.y < 1e-12) return;
      const double t_par = dot(g.t, e);
      if (t_par <= 1e-12 || t_par > l_max_ + 1e-9) return;
      const Vec2 x0 = (g.t - e * t_par) / 2;
      const double w = e.x / e.y;
      if (std::abs(w) > w_max_) return;
      const double u = x0.x - x0.y * w;
      for (const auto& c : cons_) {
        const double val = u + w * c.p.y - c.p.x;
        if (c.left ? val < -1e-9 : val > 1e-9) return;
        if (std::abs(val) <= 1e-9 && s_.is_singular(c.vertex)) return;
      }
      if (!primitive(u, w)) return;
      record(true, t_par, u, u, w, true, true);
    }
  }

  void record(bool glide, double length, double lo, double hi, double w, bool soft_lo, bool soft_hi) {
    Piece pc;
    pc.glide = glide;
    pc.length = length;
    pc.start = start_;
    pc.frame_to_local = T0_.inverse();
    pc.u0 = lo;
    pc.u1 = hi;
    pc.w = w;
    pc.start_length = len_;
    const Vec2 d{w, 1.0};
    for (const auto& im : edges_) {
      const auto& P = s_.face_coords(im.edge.face);
      const Vec2 E0 = im.phi.apply(P[im.edge.slot]), E1 = im.phi.apply(P[(im.edge.slot + 1) % 3]);
      const Vec2 D = E1 - E0;
      const double den = D.x - w * D.y;
      if (std::abs(den) < 1e-15) continue;
      auto t_of = [&](double u) { return (u + w * E0.y - E0.x) / den; };
      double t0 = t_of(lo), t1 = t_of(hi);
      bool s0 = soft_lo, s1 = soft_hi;
      Vec2 dir = im.phi.inverse().linear(d);
      EdgeRef edge = im.edge;
      const auto partner = s_.partner(edge);
      if (partner && *partner < edge) {
        dir = s_.transfer(edge).linear(dir);
        if (!s_.flip(edge)) {
          t0 = 1 - t0;
          t1 = 1 - t1;
        }
        edge = *partner;
      }
      if (t0 > t1) {
        std::swap(t0, t1);
        std::swap(s0, s1);
      }
      pc.crossings.push_back({edge, t0, t1, s0, s1, angle_mod(std::atan2(dir.y, dir.x), pi)});
    }
    pieces.push_back(std::move(pc));
  }

  const ConeSurface& s_;
  double l_max_, w_max_;
  std::atomic<long>& steps_;
  long budget_;
  EdgeRef start_{};
  double len_ = 0.0;
  Iso2 T0_;
  std::vector<Constraint> cons_;
  std::vector<EdgeImage> edges_;
  std::vector<Iso2> reentries_;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool same_family(const Piece& A, const Crossing& a, const Piece& B, const Crossing& b) {
  if (A.glide != B.glide || std::abs(A.length - B.length) > 1e-8) return false;
  if (angle_gap(a.angle, b.angle, pi) > 1e-7) return false;
  constexpr double tol = 1e-9;
  if (A.glide) return std::abs(a.t0 - b.t0) < tol;
  const double overlap = std::min(a.t1, b.t1) - std::max(a.t0, b.t0);
  if (overlap > tol) return true;
  if (std::abs(a.t1 - b.t0) < tol) return a.soft1 && b.soft0;
  if (std::abs(b.t1 - a.t0) < tol) return b.soft1 && a.soft0;
  return false;
}

GeodesicPath trace_piece(const ConeSurface& s, const Piece& pc) {
  const double u = 0.5 * (pc.u0 + pc.u1);
  const Vec2 p = pc.frame_to_local.apply({u, 0.0});
  const Vec2 d = pc.frame_to_local.linear({pc.w, 1.0});
  GeodesicPath g;
  g.length = pc.length;
  g.closed = true;
  g.kind = GeodesicKind::soul;
  g.one_sided = pc.glide;

  // an axis through an end of the start edge runs through that vertex
  int corner = -1;
  if (u < 1e-9 * pc.start_length) corner = pc.start.slot;
  else if (u > (1 - 1e-9) * pc.start_length) corner = (pc.start.slot + 1) % 3;
  if (corner >= 0) {
    const int v = s.vertex_of(pc.start.face, corner);
    const auto& P = s.face_coords(pc.start.face);
    const Vec2 e = P[(corner + 1) % 3] - P[corner];
    // the angular coordinate is linear in the direction angle, so it may be
    // taken outside this corner's sector
    const double a = std::atan2(cross(e, d), dot(e, d));
    const double out = angle_mod(s.vertex_angle_coordinate(pc.start.face, corner, a), s.vertex(v).angle);
    auto [cr, a_local] = s.corner_at_angle(v, out);
    const Vec2 start = s.face_coords(cr.face)[cr.corner];
    const auto end = detail::trace_from(s, cr.face, start, detail::corner_direction(s, cr.face, cr.corner, a_local), -1,
                                        cr.corner, pc.length, g);
    if (end.vertex != v) throw GeodesicError("core curve trace did not close");
    ConeIncidence inc;
    inc.vertex = v;
    inc.segment = static_cast<int>(g.segments.size()) - 1;
    inc.in_angle = end.in_angle;
    inc.out_angle = out;
    const double ang = s.vertex(v).angle;
    inc.left = std::fmod(std::fmod(out - end.in_angle, ang) + ang, ang);
    inc.right = ang - inc.left;
    inc.singular = s.is_singular(v);
    g.incidences.push_back(inc);
    return g;
  }

  detail::trace_from(s, pc.start.face, p, d, pc.start.slot, -1, pc.length, g);
  const auto partner = s.partner(pc.start);
  auto& last = g.segments.back();
  const Vec2 end = s.transfer(pc.start).apply(p);
  if (!partner || last.face != partner->face || (last.exit - end).norm() > 1e-7)
    throw GeodesicError("core curve trace did not close");
  last.exit = end;
  last.exit_slot = partner->slot;
  return g;
}

std::vector<GeodesicPath> corridor_geodesics(const ConeSurface& s, const EnumerationOptions& opt,
                                             std::atomic<long>& steps, bool& exhausted) {
  double max_angle = 0.0;
  for (int f = 0; f < s.face_count(); ++f)
    for (int c = 0; c < 3; ++c) max_angle = std::max(max_angle, s.corner_angle(f, c));
  const double c_min = 0.5 * (pi - max_angle);
  const double w_max = 1.01 / std::tan(c_min) + 0.01;

  std::vector<EdgeRef> starts;
  for (int f = 0; f < s.face_count(); ++f)
    for (int e = 0; e < 3; ++e) starts.push_back({f, e});
  std::vector<std::vector<Piece>> found(starts.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    CorridorSearch search(s, opt.l_max, w_max, steps, opt.budget);
    for (size_t i = next++; i < starts.size() && !stop; i = next++) {
      search.pieces.clear();
      search.run(starts[i]);
      found[i] = std::move(search.pieces);
      if (search.exhausted) stop = true;
    }
  };
  const int nt = std::max(1, opt.threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  exhausted = exhausted || stop;

  std::vector<Piece> pieces;
  for (auto& f : found)
    for (auto& p : f) pieces.push_back(std::move(p));

  std::map<EdgeRef, std::vector<std::pair<int, int>>> buckets;
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t k = 0; k < pieces[i].crossings.size(); ++k)
      buckets[pieces[i].crossings[k].edge].push_back({static_cast<int>(i), static_cast<int>(k)});
  UnionFind uf(pieces.size());
  for (auto& [edge, list] : buckets)
    for (size_t x = 0; x < list.size(); ++x)
      for (size_t y = x + 1; y < list.size(); ++y) {
        const auto [i, k] = list[x];
        const auto [j, l] = list[y];
        if (i == j || uf.find(i) == uf.find(j)) continue;
        if (same_family(pieces[i], pieces[i].crossings[k], pieces[j], pieces[j].crossings[l])) uf.unite(i, j);
      }

  std::map<int, int> best;  // component -> representative piece
  for (size_t i = 0; i < pieces.size(); ++i) {
    const int r = uf.find(static_cast<int>(i));
    auto it = best.find(r);
    auto score = [&](const Piece& p) {
      if (!p.glide) return p.u1 - p.u0;
      return std::min(p.u0, p.start_length - p.u0) / p.start_length;
    };
    if (it == best.end() || score(pieces[i]) > score(pieces[it->second]) + 1e-12) best[r] = static_cast<int>(i);
  }
  std::vector<GeodesicPath> out;
  for (const auto& [r, i] : best) out.push_back(trace_piece(s, pieces[i]));
  return out;
}

// --- closed chains of saddle connections --------------------------------------

struct Connection {
  int from = -1, to = -1;
  double out = 0.0, in = 0.0, length = 0.0;
  int emit_face = -1, emit_corner = -1;
  Vec2 dir{};
};

std::vector<Connection> saddle_connections(const ConeSurface& s, double l_max, std::atomic<long>& steps, long budget,
                                           bool& exhausted) {
  std::vector<Connection> all;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const long left = budget - steps.load();
    if (left <= 0) {
      exhausted = true;
      break;
    }
    detail::Propagator prop(s, l_max, left, false);
    prop.on_hit = [&](const detail::Window& w, int face, int corner, double d) {
      if (d > l_max + 1e-9 || w.emit_face < 0) return;
      const Vec2 A = s.face_coords(face)[corner];
      Connection c;
      c.from = w.source;
      c.to = s.vertex_of(face, corner);
      c.length = d;
      c.emit_face = w.emit_face;
      c.emit_corner = w.emit_corner;
      c.dir = w.to_emit.apply(A) - s.face_coords(w.emit_face)[w.emit_corner];
      c.out = s.vertex_angle_coordinate(w.emit_face, w.emit_corner,
                                        detail::corner_local_angle(s, w.emit_face, w.emit_corner, c.dir));
      c.in = s.vertex_angle_coordinate(face, corner, detail::corner_local_angle(s, face, corner, w.origin - A));
      all.push_back(c);
    };
    prop.emit_vertex(v, 0.0);
    steps += prop.steps();
    if (prop.exhausted()) exhausted = true;
  }
  std::sort(all.begin(), all.end(), [](const Connection& a, const Connection& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    if (std::abs(a.length - b.length) > 1e-9) return a.length < b.length;
    return a.out < b.out;
  });
  std::vector<Connection> unique;
  for (const auto& c : all) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
      if (it->from != c.from || it->to != c.to || c.length - it->length > 1e-9) break;
      if (angle_gap(it->out, c.out, s.vertex(c.from).angle) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(c);
  }
  return unique;
}

struct Sides {
  double left, right;
};

Sides side_angles(const ConeSurface& s, int v, double in, double out) {
  const double ang = s.vertex(v).angle;
  const double left = angle_mod(out - in, ang);
  return {left, ang - left};
}

class ChainSearch {
 public:
  ChainSearch(const ConeSurface& s, const std::vector<Connection>& conns, double l_max, std::atomic<long>& steps,
              long budget)
      : s_(s), c_(conns), l_max_(l_max), steps_(steps), budget_(budget), from_(s.vertex_count()), rev_(conns.size(), -1) {
    for (size_t i = 0; i < c_.size(); ++i) from_[c_[i].from].push_back(static_cast<int>(i));
    for (size_t i = 0; i < c_.size(); ++i)
      for (int j : from_[c_[i].to])
        if (c_[j].to == c_[i].from && std::abs(c_[j].length - c_[i].length) < 1e-9 &&
            angle_gap(c_[j].out, c_[i].in, s.vertex(c_[i].to).angle) < 1e-7 &&
            angle_gap(c_[j].in, c_[i].out, s.vertex(c_[i].from).angle) < 1e-7)
          rev_[i] = j;
  }

  void run() {
    for (size_t i = 0; i < c_.size() && !exhausted; ++i) {
      start_ = static_cast<int>(i);
      chain_ = {start_};
      extend(c_[i].length);
    }
  }

  std::vector<std::vector<int>> chains;
  bool exhausted = false;

 private:
  bool straight_enough(int v, double in, double out) const {
    const Sides sd = side_angles(s_, v, in, out);
    return sd.left >= pi - 1e-9 && sd.right >= pi - 1e-9;
  }

  void extend(double length) {
    if (++steps_ > budget_) {
      exhausted = true;
      return;
    }
    const Connection& last = c_[chain_.back()];
    const Connection& first = c_[start_];
    if (last.to == first.from && straight_enough(last.to, last.in, first.out)) accept();
    for (int j : from_[last.to]) {
      if (j < start_ || length + c_[j].length > l_max_ + 1e-9) continue;
      if (!straight_enough(last.to, last.in, c_[j].out)) continue;
      chain_.push_back(j);
      extend(length + c_[j].length);
      chain_.pop_back();
      if (exhausted) return;
    }
  }

  static std::vector<int> min_rotation(const std::vector<int>& v) {
    std::vector<int> best = v;
    for (size_t r = 1; r < v.size(); ++r) {
      std::vector<int> rot(v.begin() + r, v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + r);
      best = std::min(best, rot);
    }
    return best;
  }

  void accept() {
    const size_t n = chain_.size();
    for (size_t p = 1; p < n; ++p) {
      if (n % p) continue;
      bool periodic = true;
      for (size_t i = p; i < n && periodic; ++i) periodic = chain_[i] == chain_[i - p];
      if (periodic) return;
    }
    bool singular = false;
    for (int k : chain_) singular = singular || s_.is_singular(c_[k].to);
    if (!singular) return;
    std::vector<int> key = min_rotation(chain_);
    std::vector<int> rev;
    bool has_rev = true;
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      if (rev_[*it] < 0) has_rev = false;
      rev.push_back(rev_[*it]);
    }
    if (has_rev) key = std::min(key, min_rotation(rev));
    if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) return;
    keys_.push_back(key);
    chains.push_back(key);
  }

  const ConeSurface& s_;
  const std::vector<Connection>& c_;
  double l_max_;
  std::atomic<long>& steps_;
  long budget_;
  std::vector<std::vector<int>> from_;
  std::vector<int> rev_;
  int start_ = 0;
  std::vector<int> chain_;
  std::vector<std::vector<int>> keys_;
};

GeodesicPath trace_chain(const ConeSurface& s, const std::vector<Connection>& conns, const std::vector<int>& chain) {
  GeodesicPath g;
  g.closed = true;
  g.kind = GeodesicKind::saddle_chain;
  for (size_t i = 0; i < chain.size(); ++i) {
    const Connection& c = conns[chain[i]];
    const Connection& next = conns[chain[(i + 1) % chain.size()]];
    const Vec2 p = s.face_coords(c.emit_face)[c.emit_corner];
    const auto end = detail::trace_from(s, c.emit_face, p, c.dir, -1, c.emit_corner, c.length, g);
    if (end.vertex != c.to) throw GeodesicError("saddle connection trace missed its end vertex");
    g.length += c.length;
    ConeIncidence inc;
    inc.vertex = c.to;
    inc.segment = static_cast<int>(g.segments.size()) - 1;
    inc.in_angle = c.in;
    inc.out_angle = next.out;
    const Sides sd = side_angles(s, c.to, c.in, next.out);
    inc.left = sd.left;
    inc.right = sd.right;
    inc.singular = s.is_singular(c.to);
    g.incidences.push_back(inc);
  }
  return g;
}

/// Point-and-direction marks of a traced closed path: edge crossings
/// (canonical edge, parameter, direction mod pi) and vertex passages
/// (vertex, unordered pair of angular coordinates).
struct Marker {
  int kind, a, b;
  double x, y;
};

std::vector<Marker> markers(const ConeSurface& s, const GeodesicPath& g) {
  std::vector<Marker> out;
  for (const auto& sg : g.segments) {
    if (sg.exit_slot < 0) continue;
    EdgeRef e{sg.face, sg.exit_slot};
    const auto& P = s.face_coords(e.face);
    const Vec2 a = P[e.slot], b = P[(e.slot + 1) % 3];
    double t = dot(sg.exit - a, b - a) / (b - a).norm2();
    Vec2 dir = sg.exit - sg.entry;
    const auto partner = s.partner(e);
    if (partner && *partner < e) {
      dir = s.transfer(e).linear(dir);
      if (!s.flip(e)) t = 1 - t;
      e = *partner;
    }
    if (t < 1e-9 || t > 1 - 1e-9) continue;  // vertex passages are listed below
    out.push_back({0, e.face, e.slot, t, angle_mod(std::atan2(dir.y, dir.x), pi)});
  }
  for (const auto& inc : g.incidences)
    out.push_back({1, inc.vertex, 0, std::min(inc.in_angle, inc.out_angle), std::max(inc.in_angle, inc.out_angle)});
  return out;
}

bool same_marker(const ConeSurface& s, const Marker& a, const Marker& b);

bool same_geodesic(const ConeSurface& s, const GeodesicPath& g, const std::vector<Marker>& mg, const GeodesicPath& h,
                   const std::vector<Marker>& mh) {
  if (g.kind != h.kind || std::abs(g.length - h.length) > 1e-8) return false;
  for (const auto& a : mg)
    for (const auto& b : mh)
      if (same_marker(s, a, b)) return true;
  return false;
}

bool same_marker(const ConeSurface& s, const Marker& a, const Marker& b) {
  if (a.kind != b.kind || a.a != b.a || a.b != b.b) return false;
  if (a.kind == 0) return std::abs(a.x - b.x) < 1e-7 && angle_gap(a.y, b.y, pi) < 1e-7;
  const double ang = s.vertex(a.a).angle;
  return (angle_gap(a.x, b.x, ang) < 1e-7 && angle_gap(a.y, b.y, ang) < 1e-7) ||
         (angle_gap(a.x, b.y, ang) < 1e-7 && angle_gap(a.y, b.x, ang) < 1e-7);
}

/// An iterate passes some point in the same direction more than once.
bool repeats(const ConeSurface& s, const std::vector<Marker>& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      if (same_marker(s, m[i], m[j])) return true;
  return false;
}

}  // namespace

EnumerationResult enumerate_closed_geodesics(const ConeSurface& s, const EnumerationOptions& opt) {
  if (!(opt.l_max > 0)) throw GeodesicError("l_max must be positive");
  if (!s.closed()) throw GeodesicError("closed geodesic enumeration needs a closed surface");
  EnumerationResult res;
  std::atomic<long> steps{0};
  bool exhausted = false;
  res.geodesics = corridor_geodesics(s, opt, steps, exhausted);
  const auto conns = saddle_connections(s, opt.l_max, steps, opt.budget, exhausted);
  ChainSearch chains(s, conns, opt.l_max, steps, opt.budget);
  if (!exhausted) chains.run();
  exhausted = exhausted || chains.exhausted;
  for (const auto& ch : chains.chains) res.geodesics.push_back(trace_chain(s, conns, ch));

  std::vector<GeodesicPath> unique;
  std::vector<std::vector<Marker>> seen;
  for (auto& g : res.geodesics) {
    auto mg = markers(s, g);
    if (repeats(s, mg)) continue;
    bool dup = false;
    for (size_t i = 0; i < unique.size() && !dup; ++i) dup = same_geodesic(s, g, mg, unique[i], seen[i]);
    if (dup) continue;
    unique.push_back(std::move(g));
    seen.push_back(std::move(mg));
  }
  res.geodesics = std::move(unique);
  std::stable_sort(res.geodesics.begin(), res.geodesics.end(), [](const GeodesicPath& a, const GeodesicPath& b) {
    if (std::abs(a.length - b.length) > 1e-9) return a.length < b.length;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.faces() < b.faces();
  });
  res.partial = exhausted;
  res.steps = steps.load();
  return res;
}

SystoleResult systole(const ConeSurface& s, const EnumerationOptions& opt) {
  if (!s.closed()) throw GeodesicError("systole needs a closed surface");
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.vertex(v).angle < 2 * pi - 1e-9)
      throw GeodesicError("cone angle below 2 pi at vertex " + std::to_string(v) + ": surface is not nonpositively curved");
  auto res = enumerate_closed_geodesics(s, opt);
  SystoleResult out;
  out.partial = res.partial;
  if (!res.geodesics.empty()) {
    out.found = true;
    out.length = res.geodesics.front().length;
    out.path = res.geodesics.front();
  }
  return out;
}

}  // namespace dyck
