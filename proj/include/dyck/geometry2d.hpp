#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace dyck {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// Orientation test: > 0 when c lies left of the directed line a -> b.
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

/// Planar isometry x -> R x + t (R orthogonal, det = +-1).
struct Iso2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;  // R = [a b; c d]
  Vec2 t{};

  Vec2 apply(Vec2 p) const { return {a * p.x + b * p.y + t.x, c * p.x + d * p.y + t.y}; }
  Vec2 linear(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }
  bool reflects() const { return det() < 0.0; }

  Iso2 operator*(const Iso2& o) const;  // this after o
  Iso2 inverse() const;

  /// Orientation-preserving map sending p0 -> q0 with direction p1-p0 onto q1-q0.
  static Iso2 from_segment(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, bool reflect);
};

double polygon_area(std::span<const Vec2> poly);
double triangle_area(Vec2 a, Vec2 b, Vec2 c);

/// Clips a convex polygon to the half-plane {p : dot(n, p) + c >= 0}.
std::vector<Vec2> clip_halfplane(std::span<const Vec2> poly, Vec2 n, double c);

/// Point-to-segment Euclidean distance.
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
/// Minimal distance between two closed segments.
double segment_segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

/// Third vertex of a triangle with base (0,0)-(l0,0) and sides l0, l1, l2
/// (l1 = |c1 c2|, l2 = |c2 c0|), placed above the x-axis.
Vec2 apex_from_lengths(double l0, double l1, double l2);

}  // namespace dyck
