#include "dyck/geometry2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyck {

Iso2 Iso2::operator*(const Iso2& o) const {
  Iso2 r;
  r.a = a * o.a + b * o.c;
  r.b = a * o.b + b * o.d;
  r.c = c * o.a + d * o.c;
  r.d = c * o.b + d * o.d;
  r.t = apply(o.t);
  return r;
}

Iso2 Iso2::inverse() const {
  // R orthogonal: inverse is the transpose
  Iso2 r;
  r.a = a;
  r.b = c;
  r.c = b;
  r.d = d;
  Vec2 mt = r.linear(t);
  r.t = {-mt.x, -mt.y};
  return r;
}

Iso2 Iso2::from_segment(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, bool reflect) {
  Vec2 u = p1 - p0, v = q1 - q0;
  double lu = u.norm(), lv = v.norm();
  if (lu == 0.0 || lv == 0.0) throw std::invalid_argument("degenerate segment");
  u = u / lu;
  v = v / lv;
  // Build R with R u = v; for reflect, R also flips the normal.
  Iso2 r;
  if (!reflect) {
    double cs = dot(u, v), sn = cross(u, v);
    r.a = cs;
    r.b = -sn;
    r.c = sn;
    r.d = cs;
  } else {
    // reflection across the bisector direction w of u and v: R = 2 w w^T - I
    Vec2 w = u + v;
    if (w.norm() < 1e-14) w = perp(u);
    w = w / w.norm();
    r.a = 2 * w.x * w.x - 1;
    r.b = 2 * w.x * w.y;
    r.c = 2 * w.x * w.y;
    r.d = 2 * w.y * w.y - 1;
  }
  Vec2 rp = r.linear(p0);
  r.t = q0 - rp;
  return r;
}

double polygon_area(std::span<const Vec2> poly) {
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * s;
}

double triangle_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * orient(a, b, c); }

std::vector<Vec2> clip_halfplane(std::span<const Vec2> poly, Vec2 n, double c) {
  std::vector<Vec2> out;
  const size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    Vec2 p = poly[i], q = poly[(i + 1) % m];
    double fp = dot(n, p) + c, fq = dot(n, q) + c;
    if (fp >= 0) out.push_back(p);
    if ((fp >= 0) != (fq >= 0)) {
      double s = fp / (fp - fq);
      out.push_back(p + (q - p) * s);
    }
  }
  return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double l2 = ab.norm2();
  double s = l2 > 0 ? std::clamp(dot(p - a, ab) / l2, 0.0, 1.0) : 0.0;
  return (a + ab * s - p).norm();
}

double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

Vec2 apex_from_lengths(double l0, double l1, double l2) {
  // |c2 - c0| = l2, |c2 - c1| = l1, c1 = (l0, 0)
  double x = (l2 * l2 - l1 * l1 + l0 * l0) / (2.0 * l0);
  double y2 = l2 * l2 - x * x;
  return {x, y2 > 0 ? std::sqrt(y2) : 0.0};
}

}  // namespace dyck
