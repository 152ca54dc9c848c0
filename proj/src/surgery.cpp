#include "dyck/surgery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dyck {

namespace {

using CornerMap = std::function<CornerRef(int face, int corner)>;

std::optional<int> remap_vertex(const ConeSurface& from, const ConeSurface& to, std::optional<int> v,
                                const CornerMap& cm) {
  if (!v) return std::nullopt;
  const CornerRef c = from.vertex(*v).corners.front();
  const CornerRef n = cm(c.face, c.corner);
  return to.vertex_of(n.face, n.corner);
}

Marks remap_vertex_marks(const ConeSurface& from, const ConeSurface& to, const CornerMap& cm) {
  Marks m;
  for (int w : from.marks().weierstrass) m.weierstrass.push_back(*remap_vertex(from, to, w, cm));
  m.p = remap_vertex(from, to, from.marks().p, cm);
  m.q = remap_vertex(from, to, from.marks().q, cm);
  return m;
}

}  // namespace

ConeSurface orientation_double_cover(const ConeSurface& s) {
  if (s.orientable()) throw SurfaceError("orientation_double_cover: input is already orientable");
  const int n = s.face_count();
  std::vector<std::array<double, 3>> lengths;
  for (int f = 0; f < n; ++f) lengths.push_back(s.lengths()[f]);
  for (int f = 0; f < n; ++f) {
    const auto& l = s.lengths()[f];
    lengths.push_back({l[2], l[1], l[0]});  // corners (c0, c2, c1)
  }
  auto lift = [n](int sheet, int f, int c) -> CornerRef {
    return sheet == 0 ? CornerRef{f, c} : CornerRef{f + n, (3 - c) % 3};
  };
  std::vector<Gluing> gl;
  for (const auto& g : s.gluings()) {
    const int ca = g.a.slot, cb = (g.a.slot + 1) % 3;
    const int da = s.glued_corner(g.a, ca), db = s.glued_corner(g.a, cb);
    for (int sheet = 0; sheet < 2; ++sheet) {
      // an orientation-reversing gluing crosses to the other sheet
      const int other = g.flip ? 1 - sheet : sheet;
      CornerRef a0 = lift(sheet, g.a.face, ca), a1 = lift(sheet, g.a.face, cb);
      CornerRef b0 = lift(other, g.b.face, da), b1 = lift(other, g.b.face, db);
      gl.push_back(make_gluing(a0.face, a0.corner, a1.corner, b0.face, b0.corner, b1.corner));
    }
  }
  return ConeSurface(s.name() + "_double_cover", std::move(lengths), std::move(gl));
}

CutResult cut_along_graph(const ConeSurface& s, const CutGraph& g) {
  auto canon = [&](EdgeRef e) {
    auto p = s.partner(e);
    if (!p) throw SurfaceError("cut edge lies on the boundary");
    return std::min(e, *p);
  };
  auto ends = [&](EdgeRef e) {
    return std::pair{s.vertex_of(e.face, e.slot), s.vertex_of(e.face, (e.slot + 1) % 3)};
  };
  std::set<EdgeRef> used;
  std::map<int, int> degree;
  std::set<int> path_endpoints;
  std::map<int, int> interior_owner;  // vertex -> path using it internally
  for (size_t pi = 0; pi < g.paths.size(); ++pi) {
    const auto& path = g.paths[pi];
    if (path.empty()) throw SurfaceError("empty cut path");
    std::vector<int> verts;
    for (size_t i = 0; i < path.size(); ++i) {
      EdgeRef c = canon(path[i]);
      if (!used.insert(c).second) throw SurfaceError("cut graph is not embedded: edge used twice");
      auto [a, b] = ends(path[i]);
      if (i == 0) {
        if (path.size() > 1) {
          auto [c2, d2] = ends(path[1]);
          if (a == c2 || a == d2) std::swap(a, b);
        }
        verts.push_back(a);
      }
      if (verts.back() == a) {
        verts.push_back(b);
      } else if (verts.back() == b) {
        verts.push_back(a);
      } else {
        throw SurfaceError("cut path is not connected");
      }
      ++degree[a];
      ++degree[b];
    }
    bool closed = verts.front() == verts.back() && path.size() > 1;
    if (!closed) {
      path_endpoints.insert(verts.front());
      path_endpoints.insert(verts.back());
    }
    for (size_t i = closed ? 0 : 1; i + 1 < verts.size(); ++i) {
      auto [it, fresh] = interior_owner.emplace(verts[i], static_cast<int>(pi));
      if (!fresh && it->second != static_cast<int>(pi)) throw SurfaceError("cut paths cross away from their endpoints");
    }
  }
  for (int v : path_endpoints)
    if (interior_owner.count(v)) throw SurfaceError("cut paths cross away from their endpoints");
  for (auto [v, d] : degree)
    if (d == 1) throw SurfaceError("cut graph has a dangling path");

  std::vector<Gluing> kept, removed;
  for (const auto& gl : s.gluings()) (used.count(std::min(gl.a, gl.b)) ? removed : kept).push_back(gl);
  Marks marks = s.marks();
  marks.weierstrass.clear();
  marks.p.reset();
  marks.q.reset();
  ConeSurface cut(s.name() + "_cut", s.lengths(), std::move(kept));
  CornerMap id = [](int f, int c) { return CornerRef{f, c}; };
  Marks vm = remap_vertex_marks(s, cut, id);
  marks.weierstrass = vm.weierstrass;
  marks.p = vm.p;
  marks.q = vm.q;
  return {cut.with_marks(std::move(marks)), std::move(removed)};
}

ConeSurface reglue(const CutResult& cut) {
  const ConeSurface& c = cut.surface;
  std::vector<Gluing> gl = c.gluings();
  gl.insert(gl.end(), cut.removed.begin(), cut.removed.end());
  std::string name = c.name();
  if (name.size() > 4 && name.ends_with("_cut")) name.resize(name.size() - 4);
  ConeSurface out(name, c.lengths(), std::move(gl));
  CornerMap id = [](int f, int k) { return CornerRef{f, k}; };
  Marks m = c.marks();
  Marks vm = remap_vertex_marks(c, out, id);
  m.weierstrass = vm.weierstrass;
  m.p = vm.p;
  m.q = vm.q;
  return out.with_marks(std::move(m));
}

CutGraph weierstrass_graph(const ConeSurface& s) {
  const auto& m = s.marks();
  if (m.weierstrass.empty() || !m.p || !m.q) throw SurfaceError("surface lacks Weierstrass and p, q marks");
  CutGraph g;
  for (int w : m.weierstrass) {
    std::optional<EdgeRef> to_p, to_q;
    for (int f = 0; f < s.face_count(); ++f)
      for (int e = 0; e < 3; ++e) {
        int a = s.vertex_of(f, e), b = s.vertex_of(f, (e + 1) % 3);
        int other = a == w ? b : (b == w ? a : -1);
        if (other == *m.p && !to_p) to_p = EdgeRef{f, e};
        if (other == *m.q && !to_q) to_q = EdgeRef{f, e};
      }
    if (!to_p || !to_q) throw SurfaceError("Weierstrass point not joined to p and q by mesh edges");
    g.paths.push_back({*to_p, *to_q});
  }
  return g;
}

CutGraph lift_to_double_cover(const ConeSurface& s, const CutGraph& g) {
  const int n = s.face_count();
  CutGraph out;
  for (const auto& path : g.paths)
    for (EdgeRef e : path) {
      out.paths.push_back({e});
      out.paths.push_back({EdgeRef{e.face + n, 2 - e.slot}});
    }
  return out;
}

ConeSurface refine(const ConeSurface& s, int n) {
  if (n < 1) throw SurfaceError("refinement factor must be positive");
  if (n == 1) return s;
  const int nf = s.face_count();
  // Child faces of one parent, indexed locally; corners are grid keys (i, j)
  // meaning c0 + i/n (c1 - c0) + j/n (c2 - c0).
  struct Child {
    std::array<std::pair<int, int>, 3> key;
    int shape;  // 0: up (l0,l1,l2); 1: down (l2,l0,l1)
  };
  std::vector<Child> pattern;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + j < n; ++i) {
      pattern.push_back({{{{i, j}, {i + 1, j}, {i, j + 1}}}, 0});
      if (i + j + 1 < n) pattern.push_back({{{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}}, 1});
    }
  const int per = static_cast<int>(pattern.size());
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, std::pair<int, int>> edge_of;  // ordered key pair
  std::map<std::pair<int, int>, CornerRef> corner_of_key;
  for (int c = 0; c < per; ++c)
    for (int k = 0; k < 3; ++k) {
      edge_of[{pattern[c].key[k], pattern[c].key[(k + 1) % 3]}] = {c, k};
      corner_of_key.emplace(pattern[c].key[k], CornerRef{c, k});
    }

  std::vector<std::array<double, 3>> lengths;
  for (int f = 0; f < nf; ++f) {
    const auto& l = s.lengths()[f];
    for (const auto& ch : pattern)
      lengths.push_back(ch.shape == 0 ? std::array{l[0] / n, l[1] / n, l[2] / n}
                                      : std::array{l[2] / n, l[0] / n, l[1] / n});
  }
  std::vector<Gluing> gl;
  // interior gluings: each undirected key edge appears in both directions
  for (int f = 0; f < nf; ++f)
    for (int c = 0; c < per; ++c)
      for (int k = 0; k < 3; ++k) {
        auto a = pattern[c].key[k], b = pattern[c].key[(k + 1) % 3];
        auto it = edge_of.find({b, a});
        if (it == edge_of.end() || it->second.first < c) continue;
        gl.push_back({{f * per + c, k}, {f * per + it->second.first, it->second.second}, false});
      }
  auto slot_point = [n](int slot, int t) -> std::pair<int, int> {
    if (slot == 0) return {t, 0};
    if (slot == 1) return {n - t, t};
    return {0, n - t};
  };
  auto corner_key = [n](int corner) -> std::pair<int, int> {
    return corner == 0 ? std::pair{0, 0} : (corner == 1 ? std::pair{n, 0} : std::pair{0, n});
  };
  // k-th piece of slot e of face f, as child edge
  auto piece = [&](EdgeRef e, int k) {
    auto [c, slot] = edge_of.at({slot_point(e.slot, k), slot_point(e.slot, k + 1)});
    return EdgeRef{e.face * per + c, slot};
  };
  for (const auto& g : s.gluings()) {
    for (int k = 0; k < n; ++k) {
      const int kb = g.flip ? k : n - 1 - k;
      EdgeRef a = piece(g.a, k), b = piece(g.b, kb);
      gl.push_back({a, b, g.flip});
    }
  }
  ConeSurface out(s.name(), std::move(lengths), std::move(gl));
  CornerMap cm = [&](int f, int c) {
    CornerRef r = corner_of_key.at(corner_key(c));
    return CornerRef{f * per + r.face, r.corner};
  };
  Marks m = remap_vertex_marks(s, out, cm);
  for (EdgeRef e : s.marks().soul)
    for (int k = 0; k < n; ++k) m.soul.push_back(piece(e, k));
  for (int f : s.marks().collar_faces)
    for (int c = 0; c < per; ++c) m.collar_faces.push_back(f * per + c);
  return out.with_marks(std::move(m));
}

ConeSurface relabel_faces(const ConeSurface& s, const std::vector<int>& perm, int rotate) {
  const int nf = s.face_count();
  if (static_cast<int>(perm.size()) != nf) throw SurfaceError("permutation size mismatch");
  std::vector<bool> seen(nf, false);
  for (int p : perm) {
    if (p < 0 || p >= nf || seen[p]) throw SurfaceError("not a permutation");
    seen[p] = true;
  }
  const int r = ((rotate % 3) + 3) % 3;
  auto slot_new = [r](int old) { return (old - r + 3) % 3; };
  std::vector<std::array<double, 3>> lengths(nf);
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 3; ++i) lengths[perm[f]][i] = s.lengths()[f][(i + r) % 3];
  std::vector<Gluing> gl;
  for (const auto& g : s.gluings())
    gl.push_back({{perm[g.a.face], slot_new(g.a.slot)}, {perm[g.b.face], slot_new(g.b.slot)}, g.flip});
  ConeSurface out(s.name(), std::move(lengths), std::move(gl));
  CornerMap cm = [&](int f, int c) { return CornerRef{perm[f], slot_new(c)}; };
  Marks m = remap_vertex_marks(s, out, cm);
  for (EdgeRef e : s.marks().soul) m.soul.push_back({perm[e.face], slot_new(e.slot)});
  for (int f : s.marks().collar_faces) m.collar_faces.push_back(perm[f]);
  std::sort(m.collar_faces.begin(), m.collar_faces.end());
  return out.with_marks(std::move(m));
}

}  // namespace dyck
