#include "dyck/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>

namespace dyck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Corner of the partner face matching corner `start ? e : e+1` of slot e.
int partner_corner(bool start, int s, bool flip) {
  if (start) return flip ? s : (s + 1) % 3;
  return flip ? (s + 1) % 3 : s;
}

std::pair<EdgeRef, EdgeRef> ordered(const Gluing& g) {
  return g.a < g.b ? std::pair{g.a, g.b} : std::pair{g.b, g.a};
}

}  // namespace

ConeSurface::ConeSurface(std::string name, std::vector<std::array<double, 3>> lengths, std::vector<Gluing> gluings,
                         Marks marks)
    : name_(std::move(name)), lengths_(std::move(lengths)), gluings_(std::move(gluings)), marks_(std::move(marks)) {
  derive();
}

ConeSurface ConeSurface::with_marks(Marks marks) const {
  ConeSurface s = *this;
  s.marks_ = std::move(marks);
  return s;
}

ConeSurface ConeSurface::renamed(std::string name) const {
  ConeSurface s = *this;
  s.name_ = std::move(name);
  return s;
}

void ConeSurface::derive() {
  const int nf = face_count();
  if (nf == 0) throw SurfaceError("surface has no faces");
  for (int f = 0; f < nf; ++f) {
    const auto& l = lengths_[f];
    for (int i = 0; i < 3; ++i) {
      if (!(l[i] > 0.0) || !std::isfinite(l[i])) throw SurfaceError("face " + std::to_string(f) + ": bad edge length");
      if (l[i] >= l[(i + 1) % 3] + l[(i + 2) % 3])
        throw SurfaceError("face " + std::to_string(f) + ": triangle inequality violated");
    }
  }

  partner_.assign(nf, {EdgeRef{}, EdgeRef{}, EdgeRef{}});
  slot_flip_.assign(nf, {false, false, false});
  auto check_ref = [&](EdgeRef e) {
    if (e.face < 0 || e.face >= nf || e.slot < 0 || e.slot > 2) throw SurfaceError("gluing refers to a missing slot");
  };
  for (const auto& g : gluings_) {
    check_ref(g.a);
    check_ref(g.b);
    if (g.a == g.b) throw SurfaceError("slot glued to itself");
    if (partner_[g.a.face][g.a.slot].face >= 0 || partner_[g.b.face][g.b.slot].face >= 0)
      throw SurfaceError("slot glued twice");
    double la = edge_length(g.a), lb = edge_length(g.b);
    if (std::abs(la - lb) > 1e-12 * std::max(1.0, la))
      throw SurfaceError("glued edges differ in length: " + std::to_string(la) + " vs " + std::to_string(lb));
    partner_[g.a.face][g.a.slot] = g.b;
    partner_[g.b.face][g.b.slot] = g.a;
    slot_flip_[g.a.face][g.a.slot] = g.flip;
    slot_flip_[g.b.face][g.b.slot] = g.flip;
  }

  coords_.resize(nf);
  corner_angles_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& l = lengths_[f];
    coords_[f] = {Vec2{0.0, 0.0}, Vec2{l[0], 0.0}, apex_from_lengths(l[0], l[1], l[2])};
    for (int c = 0; c < 3; ++c) {
      Vec2 u = coords_[f][(c + 1) % 3] - coords_[f][c];
      Vec2 v = coords_[f][(c + 2) % 3] - coords_[f][c];
      corner_angles_[f][c] = std::atan2(cross(u, v), dot(u, v));
    }
  }

  transfer_.assign(nf, {Iso2{}, Iso2{}, Iso2{}});
  boundary_slots_ = 0;
  for (int f = 0; f < nf; ++f) {
    for (int e = 0; e < 3; ++e) {
      EdgeRef p = partner_[f][e];
      if (p.face < 0) {
        ++boundary_slots_;
        continue;
      }
      bool fl = slot_flip_[f][e];
      Vec2 q0 = coords_[p.face][partner_corner(true, p.slot, fl)];
      Vec2 q1 = coords_[p.face][partner_corner(false, p.slot, fl)];
      transfer_[f][e] = Iso2::from_segment(coords_[f][e], coords_[f][(e + 1) % 3], q0, q1, fl);
    }
  }

  // Vertex classes.
  UnionFind uf(3 * nf);
  for (const auto& g : gluings_) {
    uf.unite(3 * g.a.face + g.a.slot, 3 * g.b.face + partner_corner(true, g.b.slot, g.flip));
    uf.unite(3 * g.a.face + (g.a.slot + 1) % 3, 3 * g.b.face + partner_corner(false, g.b.slot, g.flip));
  }
  corner_vertex_.assign(nf, {-1, -1, -1});
  corner_offset_.assign(nf, {0.0, 0.0, 0.0});
  corner_reversed_.assign(nf, {false, false, false});
  vertices_.clear();

  struct State {
    int face;
    int corner;
    bool forward;  // entered through the slot starting at this corner
  };
  auto step = [&](State s) -> std::optional<State> {
    int e = s.forward ? (s.corner + 2) % 3 : s.corner;
    EdgeRef p = partner_[s.face][e];
    if (p.face < 0) return std::nullopt;
    bool start = (e == s.corner);
    int d = partner_corner(start, p.slot, slot_flip_[s.face][e]);
    return State{p.face, d, d == p.slot};
  };

  std::vector<int> class_vertex(3 * nf, -1);
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      int root = uf.find(3 * f + c);
      if (class_vertex[root] >= 0) continue;
      const int vid = static_cast<int>(vertices_.size());
      class_vertex[root] = vid;
      Vertex v;

      State start{f, c, true};
      bool boundary = false;
      {
        State s = start;
        int guard = 0;
        while (true) {
          auto nx = step(s);
          if (!nx) {
            boundary = true;
            break;
          }
          s = *nx;
          if (s.face == start.face && s.corner == start.corner) break;
          if (++guard > 3 * nf) throw SurfaceError("vertex link walk did not close");
        }
      }
      if (boundary) {
        State s{f, c, false};
        int guard = 0;
        while (auto nx = step(s)) {
          s = *nx;
          if (++guard > 3 * nf) throw SurfaceError("vertex link walk did not terminate");
        }
        start = State{s.face, s.corner, !s.forward};
      }
      State s = start;
      double offset = 0.0;
      while (true) {
        corner_vertex_[s.face][s.corner] = vid;
        corner_offset_[s.face][s.corner] = offset;
        corner_reversed_[s.face][s.corner] = !s.forward;
        offset += corner_angles_[s.face][s.corner];
        v.corners.push_back({s.face, s.corner});
        auto nx = step(s);
        if (!nx) break;
        s = *nx;
        if (s.face == start.face && s.corner == start.corner) break;
        if (static_cast<int>(v.corners.size()) > 3 * nf) throw SurfaceError("vertex link walk did not close");
      }
      v.angle = offset;
      v.boundary = boundary;
      vertices_.push_back(std::move(v));
    }
  }
  for (int f = 0; f < nf; ++f)
    for (int c = 0; c < 3; ++c)
      if (corner_vertex_[f][c] != class_vertex[uf.find(3 * f + c)])
        throw SurfaceError("inconsistent vertex link: corners of one class are not on one link");

  // Orientability via face sign propagation.
  orientable_ = true;
  std::vector<int> sign(nf, 0);
  for (int f0 = 0; f0 < nf && orientable_; ++f0) {
    if (sign[f0] != 0) continue;
    sign[f0] = 1;
    std::queue<int> q;
    q.push(f0);
    while (!q.empty() && orientable_) {
      int f = q.front();
      q.pop();
      for (int e = 0; e < 3; ++e) {
        EdgeRef p = partner_[f][e];
        if (p.face < 0) continue;
        int want = slot_flip_[f][e] ? -sign[f] : sign[f];
        if (sign[p.face] == 0) {
          sign[p.face] = want;
          q.push(p.face);
        } else if (sign[p.face] != want) {
          orientable_ = false;
        }
      }
    }
  }
}

std::optional<EdgeRef> ConeSurface::partner(EdgeRef e) const {
  EdgeRef p = partner_[e.face][e.slot];
  if (p.face < 0) return std::nullopt;
  return p;
}

int ConeSurface::glued_corner(EdgeRef e, int corner) const {
  EdgeRef p = partner_[e.face][e.slot];
  if (p.face < 0) throw SurfaceError("boundary slot has no partner");
  return partner_corner(corner == e.slot, p.slot, slot_flip_[e.face][e.slot]);
}

double ConeSurface::vertex_angle_coordinate(int face, int corner, double a) const {
  double off = corner_offset_[face][corner];
  return corner_reversed_[face][corner] ? off + corner_angles_[face][corner] - a : off + a;
}

std::pair<CornerRef, double> ConeSurface::corner_at_angle(int v, double coordinate) const {
  const Vertex& vx = vertices_[v];
  double x = coordinate;
  if (!vx.boundary) {
    x = std::fmod(x, vx.angle);
    if (x < 0) x += vx.angle;
  }
  for (const auto& cr : vx.corners) {
    double off = corner_offset_[cr.face][cr.corner];
    double ang = corner_angles_[cr.face][cr.corner];
    if (x >= off - 1e-15 && x <= off + ang + 1e-15) {
      double a = std::clamp(x - off, 0.0, ang);
      return {cr, corner_reversed_[cr.face][cr.corner] ? ang - a : a};
    }
  }
  throw SurfaceError("angle coordinate outside the vertex link");
}

double ConeSurface::face_area(int f) const {
  const auto& p = coords_[f];
  return triangle_area(p[0], p[1], p[2]);
}

double ConeSurface::area() const {
  double s = 0.0;
  for (int f = 0; f < face_count(); ++f) s += face_area(f);
  return s;
}

int ConeSurface::edge_count() const { return static_cast<int>(gluings_.size()) + boundary_slots_; }

int ConeSurface::euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

std::vector<std::vector<EdgeRef>> ConeSurface::boundary_loops() const {
  std::vector<EdgeRef> slots;
  for (int f = 0; f < face_count(); ++f)
    for (int e = 0; e < 3; ++e)
      if (partner_[f][e].face < 0) slots.push_back({f, e});
  std::vector<std::vector<int>> at_vertex(vertex_count());
  for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
    at_vertex[vertex_of(slots[i].face, slots[i].slot)].push_back(i);
    at_vertex[vertex_of(slots[i].face, (slots[i].slot + 1) % 3)].push_back(i);
  }
  std::vector<bool> used(slots.size(), false);
  std::vector<std::vector<EdgeRef>> loops;
  for (size_t i0 = 0; i0 < slots.size(); ++i0) {
    if (used[i0]) continue;
    std::vector<EdgeRef> loop;
    int cur = static_cast<int>(i0);
    int v = vertex_of(slots[cur].face, (slots[cur].slot + 1) % 3);
    while (cur >= 0) {
      used[cur] = true;
      loop.push_back(slots[cur]);
      int next = -1;
      for (int j : at_vertex[v])
        if (!used[j]) {
          next = j;
          break;
        }
      if (next >= 0) {
        int a = vertex_of(slots[next].face, slots[next].slot);
        int b = vertex_of(slots[next].face, (slots[next].slot + 1) % 3);
        v = (a == v) ? b : a;
      }
      cur = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

int ConeSurface::boundary_components() const { return static_cast<int>(boundary_loops().size()); }

double ConeSurface::gauss_bonnet_residual() const {
  double s = 0.0;
  for (const auto& v : vertices_) s += (v.boundary ? std::numbers::pi : kTwoPi) - v.angle;
  return s - kTwoPi * euler_characteristic();
}

bool ConeSurface::is_singular(int v, double tol) const {
  const Vertex& vx = vertices_[v];
  double flat = vx.boundary ? std::numbers::pi : kTwoPi;
  return std::abs(vx.angle - flat) > tol;
}

std::vector<double> ConeSurface::cone_angles(double smooth_tol) const {
  std::vector<double> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (!vertices_[v].boundary && is_singular(v, smooth_tol)) out.push_back(vertices_[v].angle);
  std::sort(out.begin(), out.end());
  return out;
}

bool ConeSurface::structurally_equal(const ConeSurface& other, double tol) const {
  if (face_count() != other.face_count() || gluings_.size() != other.gluings_.size()) return false;
  for (int f = 0; f < face_count(); ++f)
    for (int i = 0; i < 3; ++i)
      if (std::abs(lengths_[f][i] - other.lengths_[f][i]) > tol) return false;
  auto key = [](const std::vector<Gluing>& gs) {
    std::vector<std::tuple<EdgeRef, EdgeRef, bool>> k;
    for (const auto& g : gs) {
      auto [a, b] = ordered(g);
      k.emplace_back(a, b, g.flip);
    }
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(gluings_) == key(other.gluings_) && marks_ == other.marks_;
}

int SurfaceBuilder::add_face(Vec2 a, Vec2 b, Vec2 c) {
  if (orient(a, b, c) <= 0.0) throw SurfaceError("face must be counterclockwise and non-degenerate");
  pts_.push_back({a, b, c});
  return static_cast<int>(pts_.size()) - 1;
}

Gluing make_gluing(int f, int ca, int cb, int g, int da, int db) {
  auto slot_of = [](int x, int y) -> std::pair<int, bool> {
    if (y == (x + 1) % 3) return {x, true};   // x is the slot start
    if (x == (y + 1) % 3) return {y, false};  // x is the slot end
    throw SurfaceError("corners do not form an edge");
  };
  auto [sf, f_start] = slot_of(ca, cb);
  auto [sg, g_start] = slot_of(da, db);
  // flip iff slot starts correspond
  return {{f, sf}, {g, sg}, f_start == g_start};
}

void SurfaceBuilder::glue(int f, int ca, int cb, int g, int da, int db) {
  gluings_.push_back(make_gluing(f, ca, cb, g, da, db));
}

ConeSurface SurfaceBuilder::build(std::string name, Marks marks) const {
  std::vector<std::array<double, 3>> lengths;
  for (const auto& p : pts_)
    lengths.push_back({(p[1] - p[0]).norm(), (p[2] - p[1]).norm(), (p[0] - p[2]).norm()});
  return ConeSurface(std::move(name), std::move(lengths), gluings_, std::move(marks));
}

}  // namespace dyck
