#include "windows.hpp"

#include <algorithm>
#include <cmath>

namespace dyck::detail {

namespace {

Vec2 unit(Vec2 v) { return v / v.norm(); }

}  // namespace

Propagator::Propagator(const ConeSurface& s, double radius, long budget, bool keep_windows)
    : s_(s), radius_(radius), budget_(budget), keep_(keep_windows), per_face_(s.face_count()) {}

void Propagator::emit_vertex(int v, double sigma) {
  for (const CornerRef& cr : s_.vertex(v).corners) {
    const auto& P = s_.face_coords(cr.face);
    const int c = cr.corner, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    Window w;
    w.face = cr.face;
    w.exit_hint = c1;
    w.origin = P[c];
    w.right = {P[c], unit(P[c1] - P[c])};
    w.left = {P[c], unit(P[c2] - P[c])};
    w.sigma = sigma;
    w.source = v;
    w.emit_face = cr.face;
    w.emit_corner = c;
    if (on_hit) {
      on_hit(w, cr.face, c1, sigma + (P[c1] - P[c]).norm());
      on_hit(w, cr.face, c2, sigma + (P[c2] - P[c]).norm());
    }
    run(w);
  }
}

void Propagator::emit_sector(int v, double sigma, double lo, double hi, double root) {
  const Vertex& vx = s_.vertex(v);
  for (const CornerRef& cr : vx.corners) {
    const auto& P = s_.face_coords(cr.face);
    const int c = cr.corner, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    const double ang = s_.corner_angle(cr.face, c);
    const double x0 = s_.vertex_angle_coordinate(cr.face, c, 0.0);
    const double off = std::min(x0, s_.vertex_angle_coordinate(cr.face, c, ang));
    const bool reversed = x0 != off;
    for (int k = -1; k <= 2; ++k) {
      const double a0 = std::max(lo + k * vx.angle, off), a1 = std::min(hi + k * vx.angle, off + ang);
      if (a1 - a0 <= 1e-12) continue;
      const double l0 = reversed ? off + ang - a1 : a0 - off;
      const double l1 = reversed ? off + ang - a0 : a1 - off;
      const Vec2 e = unit(P[c1] - P[c]);
      auto dir = [&](double a) { return Vec2{e.x * std::cos(a) - e.y * std::sin(a), e.x * std::sin(a) + e.y * std::cos(a)}; };
      Window w;
      w.face = cr.face;
      w.exit_hint = c1;
      w.origin = P[c];
      w.right = {P[c], dir(l0)};
      w.left = {P[c], dir(l1)};
      w.sigma = sigma;
      w.source = v;
      w.emit_face = cr.face;
      w.emit_corner = c;
      w.root = root;
      if (on_hit) {
        if (l0 <= 1e-12) on_hit(w, cr.face, c1, sigma + (P[c1] - P[c]).norm());
        if (l1 >= ang - 1e-12) on_hit(w, cr.face, c2, sigma + (P[c2] - P[c]).norm());
      }
      run(w);
    }
  }
}

void Propagator::emit_point(int face, Vec2 x, double sigma) {
  const auto& P = s_.face_coords(face);
  for (int c = 0; c < 3; ++c)
    if ((P[c] - x).norm() < 1e-12) {
      emit_vertex(s_.vertex_of(face, c), sigma);
      return;
    }
  for (int j = 0; j < 3; ++j) {
    const Vec2 a = P[j], b = P[(j + 1) % 3];
    if (orient(x, a, b) <= 1e-14 * (b - a).norm2()) {
      // x on this edge: cover the neighbour from its side
      const EdgeRef e{face, j};
      auto partner = s_.partner(e);
      if (!partner) continue;
      const Vec2 y = s_.transfer(e).apply(x);
      const auto& Q = s_.face_coords(partner->face);
      for (int k = 0; k < 3; ++k) {
        if (k == partner->slot) continue;
        Window w;
        w.face = partner->face;
        w.exit_hint = k;
        w.origin = y;
        w.right = {y, unit(Q[k] - y)};
        w.left = {y, unit(Q[(k + 1) % 3] - y)};
        w.sigma = sigma;
        if (on_hit) {
          on_hit(w, partner->face, k, sigma + (Q[k] - y).norm());
          on_hit(w, partner->face, (k + 1) % 3, sigma + (Q[(k + 1) % 3] - y).norm());
        }
        run(w);
      }
      continue;
    }
    Window w;
    w.face = face;
    w.exit_hint = j;
    w.origin = x;
    w.right = {x, unit(a - x)};
    w.left = {x, unit(b - x)};
    w.sigma = sigma;
    if (on_hit) {
      on_hit(w, face, j, sigma + (a - x).norm());
      on_hit(w, face, (j + 1) % 3, sigma + (b - x).norm());
    }
    run(w);
  }
}

void Propagator::emit_edge(EdgeRef e, double sigma, bool both_sides) {
  std::vector<EdgeRef> sides{e};
  if (auto p = s_.partner(e); p && both_sides) sides.push_back(*p);
  for (EdgeRef side : sides) {
    const auto& P = s_.face_coords(side.face);
    const Vec2 a = P[side.slot], b = P[(side.slot + 1) % 3];
    const Vec2 n = perp(unit(b - a));
    Window w;
    w.face = side.face;
    w.entry_slot = side.slot;
    w.parallel = true;
    w.origin = a;
    w.normal = n;
    w.right = {b, n};
    w.left = {a, n};
    w.sigma = sigma;
    run(w);
  }
}

double Propagator::lower_bound(const Window& w, Vec2 a, Vec2 b) const {
  if (w.parallel) return w.sigma + std::max(0.0, std::min(dot(a - w.origin, w.normal), dot(b - w.origin, w.normal)));
  return w.sigma + point_segment_distance(w.origin, a, b);
}

void Propagator::cross(const Window& w, int slot, std::vector<Window>& stack) {
  const auto& P = s_.face_coords(w.face);
  const double lb = lower_bound(w, P[slot], P[(slot + 1) % 3]);
  if (lb > radius_) return;
  if (vertex_bound) {
    const double da = (*vertex_bound)[s_.vertex_of(w.face, slot)];
    const double db = (*vertex_bound)[s_.vertex_of(w.face, (slot + 1) % 3)];
    if (lb > 0.5 * (da + db + (P[(slot + 1) % 3] - P[slot]).norm()) + 1e-12) return;
  }
  const EdgeRef e{w.face, slot};
  auto partner = s_.partner(e);
  if (!partner) return;
  const Iso2& T = s_.transfer(e);
  Window n = w;
  n.face = partner->face;
  n.entry_slot = partner->slot;
  n.exit_hint = -1;
  n.origin = T.apply(w.origin);
  n.normal = T.linear(w.normal);
  n.right = {T.apply(w.right.p), T.linear(w.right.d)};
  n.left = {T.apply(w.left.p), T.linear(w.left.d)};
  if (T.reflects()) std::swap(n.right, n.left);
  n.to_emit = w.to_emit * T.inverse();
  stack.push_back(n);
}

void Propagator::run(Window start) {
  std::vector<Window> stack{start};
  constexpr double eps = 1e-12;
  while (!stack.empty()) {
    if (++steps_ > budget_) {
      exhausted_ = true;
      return;
    }
    Window w = std::move(stack.back());
    stack.pop_back();
    if (keep_) per_face_[w.face].push_back(w);
    if (w.entry_slot < 0) {
      cross(w, w.exit_hint, stack);
      continue;
    }
    const int s_in = w.entry_slot, a = (s_in + 2) % 3;
    const Vec2 A = s_.face_coords(w.face)[a];
    const double or_r = orient(w.right.p, w.right.p + w.right.d, A);
    const double or_l = orient(w.left.p, w.left.p + w.left.d, A);
    if (boundary_hits && on_hit && or_r > -1e-9 && or_l < 1e-9 && !(or_r > eps && or_l < -eps))
      on_hit(w, w.face, a, w.distance(A));
    if (or_r > eps && or_l < -eps) {
      if (on_hit) on_hit(w, w.face, a, w.distance(A));
      const Vec2 f = w.foot(A);
      const Ray through{f, unit(A - f)};
      Window r = w, l = w;
      r.left = through;
      l.right = through;
      cross(r, (s_in + 1) % 3, stack);
      cross(l, a, stack);
    } else if (or_r <= eps) {
      cross(w, a, stack);
    } else {
      cross(w, (s_in + 1) % 3, stack);
    }
  }
}

}  // namespace dyck::detail
