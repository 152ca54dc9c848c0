#pragma once

#include "dyck/surface.hpp"

#include <functional>
#include <vector>

namespace dyck::detail {

struct Ray {
  Vec2 p{};
  Vec2 d{};
};

/// Family of straight rays from a point source (or perpendicular to a
/// source segment when `parallel`) crossing one face, in face-local
/// coordinates. Distance at x is sigma + |x - foot(x)|.
struct Window {
  int face = -1;
  int entry_slot = -1;  // -1: emitted inside `face`, leaves through exit_hint
  int exit_hint = -1;
  bool parallel = false;
  Vec2 origin{};  // point source image, or a point on the source line
  Vec2 normal{};  // ray direction when parallel
  Ray right;
  Ray left;
  double sigma = 0.0;
  int source = -1;  // emitting vertex, or -1
  int emit_face = -1;
  int emit_corner = -1;
  Iso2 to_emit;  // face-local -> emission-face coordinates
  double root = 0.0;  // caller tag carried to every descendant

  Vec2 foot(Vec2 x) const { return parallel ? x - normal * dot(x - origin, normal) : origin; }
  double distance(Vec2 x) const { return sigma + (x - foot(x)).norm(); }
  bool contains(Vec2 x, double eps) const {
    return orient(right.p, right.p + right.d, x) >= -eps && orient(left.p, left.p + left.d, x) <= eps;
  }
};

class Propagator {
 public:
  Propagator(const ConeSurface& s, double radius, long budget, bool keep_windows);

  /// Called when a window reaches a vertex strictly inside it, or an
  /// emitted window's own corners: (window, face, corner, distance).
  std::function<void(const Window&, int, int, double)> on_hit;
  /// Also report vertices lying on a window's boundary ray (within 1e-9).
  bool boundary_hits = false;
  /// Known path lengths to vertices; windows beaten on a whole edge by both
  /// endpoints are dropped.
  const std::vector<double>* vertex_bound = nullptr;

  void emit_vertex(int v, double sigma);
  /// Windows from v over the angular coordinates [lo, hi] (lo <= hi, span < angle of v).
  void emit_sector(int v, double sigma, double lo, double hi, double root);
  void emit_point(int face, Vec2 x, double sigma);
  /// Perpendicular windows on both sides of mesh edge e.
  /// Parallel windows off both sides of e, or only into e.face.
  void emit_edge(EdgeRef e, double sigma, bool both_sides = true);

  const std::vector<std::vector<Window>>& windows() const { return per_face_; }
  long steps() const { return steps_; }
  bool exhausted() const { return exhausted_; }

 private:
  void run(Window w);
  void cross(const Window& w, int slot, std::vector<Window>& stack);
  double lower_bound(const Window& w, Vec2 a, Vec2 b) const;

  const ConeSurface& s_;
  double radius_;
  long budget_;
  bool keep_;
  long steps_ = 0;
  bool exhausted_ = false;
  std::vector<std::vector<Window>> per_face_;
};

}  // namespace dyck::detail
