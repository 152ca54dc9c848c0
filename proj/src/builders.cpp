#include "dyck/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dyck {

namespace {

// Face indices of one triangulated trapezoid inside a SurfaceBuilder.
// fan[i] = (B_i, B_{i+1}, M) with B_0 = P0 and B_m = P1; right = (P1, P2, M);
// left = (P0, M, P3).
struct TrapezoidFaces {
  std::vector<int> fan;
  int right = -1;
  int left = -1;
};

TrapezoidFaces add_trapezoid(SurfaceBuilder& sb, const std::array<Vec2, 4>& t, int pieces) {
  const Vec2 p0 = t[0], p1 = t[1], p2 = t[2], p3 = t[3];
  const Vec2 m = (p2 + p3) * 0.5;
  TrapezoidFaces out;
  for (int i = 0; i < pieces; ++i) {
    Vec2 a = p0 + (p1 - p0) * (static_cast<double>(i) / pieces);
    Vec2 b = p0 + (p1 - p0) * (static_cast<double>(i + 1) / pieces);
    out.fan.push_back(sb.add_face(a, b, m));
  }
  out.right = sb.add_face(p1, p2, m);
  out.left = sb.add_face(p0, m, p3);
  for (int i = 0; i + 1 < pieces; ++i) sb.glue(out.fan[i], 1, 2, out.fan[i + 1], 0, 2);
  sb.glue(out.fan.back(), 1, 2, out.right, 0, 2);
  sb.glue(out.fan.front(), 0, 2, out.left, 0, 1);
  return out;
}

// Corner handles on a trapezoid's outer edges.
struct Side {
  int face;
  int ca;
  int cb;
};
Side leg_right(const TrapezoidFaces& t) { return {t.right, 0, 1}; }   // P1 -> P2
Side leg_left(const TrapezoidFaces& t) { return {t.left, 0, 2}; }     // P0 -> P3
Side long_right(const TrapezoidFaces& t) { return {t.right, 1, 2}; }  // P2 -> M
Side long_left(const TrapezoidFaces& t) { return {t.left, 2, 1}; }    // P3 -> M
Side base_piece(const TrapezoidFaces& t, int i) { return {t.fan[i], 0, 1}; }

void glue(SurfaceBuilder& sb, Side a, Side b) { sb.glue(a.face, a.ca, a.cb, b.face, b.ca, b.cb); }

// Strip of `columns` cells over [x0, x0 + width] x [y0, y1]; cell j is split
// by the diagonal from its lower-left to its upper-right corner.
struct StripFaces {
  std::vector<int> lower;  // (b_j, b_{j+1}, t_{j+1})
  std::vector<int> upper;  // (b_j, t_{j+1}, t_j)
};

StripFaces add_strip(SurfaceBuilder& sb, int columns, double width, double y0, double y1) {
  StripFaces s;
  for (int j = 0; j < columns; ++j) {
    double xa = width * j / columns, xb = width * (j + 1) / columns;
    s.lower.push_back(sb.add_face({xa, y0}, {xb, y0}, {xb, y1}));
    s.upper.push_back(sb.add_face({xa, y0}, {xb, y1}, {xa, y1}));
    sb.glue(s.lower[j], 0, 2, s.upper[j], 0, 1);
    if (j > 0) sb.glue(s.lower[j - 1], 1, 2, s.upper[j], 0, 2);
  }
  return s;
}

Side strip_bottom(const StripFaces& s, int j) { return {s.lower[j], 0, 1}; }  // left -> right
Side strip_top(const StripFaces& s, int j) { return {s.upper[j], 2, 1}; }     // left -> right
Side strip_right_end(const StripFaces& s) { return {s.lower.back(), 1, 2}; }  // bottom -> top
Side strip_left_end(const StripFaces& s) { return {s.upper.front(), 0, 2}; }  // bottom -> top

// Cells [x_j, x_{j+1}] x [-d, d] split into four triangles around the cell
// centre, so the mesh is invariant under both axis reflections.
struct BandFaces {
  std::vector<int> bottom;  // (b_j, b_{j+1}, c)
  std::vector<int> right;   // (b_{j+1}, t_{j+1}, c)
  std::vector<int> top;     // (t_{j+1}, t_j, c)
  std::vector<int> left;    // (t_j, b_j, c)
};

BandFaces add_band(SurfaceBuilder& sb, int columns, double width, double d) {
  BandFaces f;
  for (int j = 0; j < columns; ++j) {
    double xa = width * j / columns, xb = width * (j + 1) / columns;
    Vec2 ba{xa, -d}, bb{xb, -d}, ta{xa, d}, tb{xb, d}, c{0.5 * (xa + xb), 0.0};
    f.bottom.push_back(sb.add_face(ba, bb, c));
    f.right.push_back(sb.add_face(bb, tb, c));
    f.top.push_back(sb.add_face(tb, ta, c));
    f.left.push_back(sb.add_face(ta, ba, c));
    sb.glue(f.bottom[j], 1, 2, f.right[j], 0, 2);
    sb.glue(f.right[j], 1, 2, f.top[j], 0, 2);
    sb.glue(f.top[j], 1, 2, f.left[j], 0, 2);
    sb.glue(f.left[j], 1, 2, f.bottom[j], 0, 2);
    if (j > 0) sb.glue(f.right[j - 1], 0, 1, f.left[j], 1, 0);
  }
  return f;
}

void require_relations(const SurfaceParameters& p) {
  for (const auto& r : check_defining_relations(p, 1e-9))
    if (r.flagged) throw SurfaceError("defining relation violated: " + r.relation);
}

}  // namespace

std::array<Vec2, 4> build_trapezoid(double short_side, double h, double alpha) {
  if (!(short_side > 0.0) || !(h > 0.0) || !(alpha > 0.0) || alpha > 0.5 * std::numbers::pi + 1e-15)
    throw SurfaceError("trapezoid needs positive sides and an acute or right base angle");
  double half_long = 0.5 * short_side + h / std::tan(alpha);
  if (alpha == 0.5 * std::numbers::pi) half_long = 0.5 * short_side;
  return {Vec2{-0.5 * short_side, 0.0}, Vec2{0.5 * short_side, 0.0}, Vec2{half_long, h}, Vec2{-half_long, h}};
}

std::array<Vec2, 4> build_trapezoid(const SurfaceParameters& p) {
  require_relations(p);
  return build_trapezoid(p.short_side, p.h, p.alpha);
}

ConeSurface build_extremal_dyck(const SurfaceParameters& p, int band_columns) {
  if (band_columns <= 0 || band_columns % 3 != 0) throw SurfaceError("band_columns must be a positive multiple of 3");
  const auto trap = build_trapezoid(p);
  const int pieces = band_columns / 3;
  SurfaceBuilder sb;
  std::array<TrapezoidFaces, 6> tz;
  for (int k = 0; k < 6; ++k) tz[k] = add_trapezoid(sb, trap, pieces);
  for (int k = 0; k < 6; ++k) {
    glue(sb, leg_right(tz[k]), leg_left(tz[(k + 1) % 6]));
    if (k < 3) {
      glue(sb, long_right(tz[k]), long_left(tz[k + 3]));
      glue(sb, long_left(tz[k]), long_right(tz[k + 3]));
    }
  }
  // Moebius band [0,1] x [-delta, delta] with (0,y) ~ (1,-y); its boundary
  // circle is the bottom edge followed by the top edge.
  BandFaces band = add_band(sb, band_columns, 1.0, p.delta);
  glue(sb, Side{band.right.back(), 0, 1}, Side{band.left.front(), 0, 1});
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < pieces; ++i) {
      int j = (k % 3) * pieces + i;
      glue(sb, base_piece(tz[k], i), k < 3 ? Side{band.bottom[j], 0, 1} : Side{band.top[j], 1, 0});
    }

  Marks marks;
  for (const auto* v : {&band.bottom, &band.right, &band.top, &band.left})
    marks.collar_faces.insert(marks.collar_faces.end(), v->begin(), v->end());
  std::sort(marks.collar_faces.begin(), marks.collar_faces.end());
  ConeSurface s = sb.build("extremal_dyck");
  for (int k = 0; k < 3; ++k) marks.weierstrass.push_back(s.vertex_of(tz[k].right, 2));
  marks.p = s.vertex_of(tz[0].right, 1);
  marks.q = s.vertex_of(tz[1].right, 1);
  return s.with_marks(std::move(marks));
}

ConeSurface build_flat_torus(double a, double b, bool star) {
  if (!(a > 0.0) || !(b > 0.0)) throw SurfaceError("torus periods must be positive");
  SurfaceBuilder sb;
  if (star) {
    BandFaces f = add_band(sb, 1, a, 0.5 * b);
    glue(sb, Side{f.right[0], 0, 1}, Side{f.left[0], 1, 0});
    glue(sb, Side{f.bottom[0], 0, 1}, Side{f.top[0], 1, 0});
    return sb.build("flat_torus");
  }
  int lo = sb.add_face({0, 0}, {a, 0}, {a, b});
  int up = sb.add_face({0, 0}, {a, b}, {0, b});
  sb.glue(lo, 0, 2, up, 0, 1);
  sb.glue(lo, 0, 1, up, 2, 1);  // bottom ~ top
  sb.glue(lo, 1, 2, up, 0, 2);  // right ~ left
  return sb.build("flat_torus");
}

ConeSurface build_klein_bottle(double side) {
  if (!(side > 0.0)) throw SurfaceError("side must be positive");
  SurfaceBuilder sb;
  int lo = sb.add_face({0, 0}, {side, 0}, {side, side});
  int up = sb.add_face({0, 0}, {side, side}, {0, side});
  sb.glue(lo, 0, 2, up, 0, 1);
  sb.glue(lo, 0, 1, up, 2, 1);  // (x,0) ~ (x,1)
  sb.glue(lo, 1, 2, up, 2, 0);  // (1,y) ~ (0,1-y)
  return sb.build("klein_bottle");
}

ConeSurface build_flat_cylinder(double circumference, double height, int columns) {
  if (columns < 2) throw SurfaceError("cylinder needs at least two columns");
  SurfaceBuilder sb;
  StripFaces lower = add_strip(sb, columns, circumference, -height / 2, 0.0);
  StripFaces upper = add_strip(sb, columns, circumference, 0.0, height / 2);
  glue(sb, strip_right_end(lower), strip_left_end(lower));
  glue(sb, strip_right_end(upper), strip_left_end(upper));
  for (int j = 0; j < columns; ++j) glue(sb, strip_top(lower, j), strip_bottom(upper, j));
  ConeSurface s = sb.build("flat_cylinder");
  Marks marks;
  for (int j = 0; j < columns; ++j) marks.soul.push_back({upper.lower[j], 0});
  return s.with_marks(std::move(marks));
}

ConeSurface build_collar_flat(const SurfaceParameters& p) {
  const auto trap = build_trapezoid(p);
  SurfaceBuilder sb;
  const int cols = 6;
  StripFaces lower = add_strip(sb, cols, 2.0, -p.delta, 0.0);
  StripFaces upper = add_strip(sb, cols, 2.0, 0.0, p.delta);
  glue(sb, strip_right_end(lower), strip_left_end(lower));
  glue(sb, strip_right_end(upper), strip_left_end(upper));
  for (int j = 0; j < cols; ++j) glue(sb, strip_top(lower, j), strip_bottom(upper, j));

  std::array<TrapezoidFaces, 6> top, bottom;
  for (int k = 0; k < 6; ++k) {
    top[k] = add_trapezoid(sb, trap, 1);
    bottom[k] = add_trapezoid(sb, trap, 1);
  }
  for (int k = 0; k < 6; ++k) {
    glue(sb, leg_right(top[k]), leg_left(top[(k + 1) % 6]));
    glue(sb, leg_right(bottom[k]), leg_left(bottom[(k + 1) % 6]));
    glue(sb, base_piece(top[k], 0), strip_top(upper, k));
    // bottom trapezoid k runs right to left over column 5 - k
    Side b = strip_bottom(lower, cols - 1 - k);
    glue(sb, base_piece(bottom[k], 0), Side{b.face, b.cb, b.ca});
  }
  ConeSurface s = sb.build("collar_flat");
  Marks marks;
  for (int j = 0; j < cols; ++j) marks.soul.push_back({upper.lower[j], 0});
  return s.with_marks(std::move(marks));
}

ConeSurface build_slit_double_torus(double a, double b, int columns, int rows, int slit_column, int slit_row,
                                    int slit_length) {
  if (!(a > 0.0) || !(b > 0.0) || columns < 2 || rows < 2) throw SurfaceError("bad torus grid");
  if (slit_length < 1 || slit_length >= columns) throw SurfaceError("slit must cover 1..columns-1 cells");
  SurfaceBuilder sb;
  auto id = [&](int sheet, int i, int j) { return (sheet * rows + j) * columns + i; };
  std::vector<int> L(2 * rows * columns), U(2 * rows * columns);
  for (int sheet = 0; sheet < 2; ++sheet)
    for (int j = 0; j < rows; ++j)
      for (int i = 0; i < columns; ++i) {
        const double x0 = a * i / columns, x1 = a * (i + 1) / columns;
        const double y0 = b * j / rows, y1 = b * (j + 1) / rows;
        const int k = id(sheet, i, j);
        L[k] = sb.add_face({x0, y0}, {x1, y0}, {x1, y1});
        U[k] = sb.add_face({x0, y0}, {x1, y1}, {x0, y1});
        sb.glue(L[k], 0, 2, U[k], 0, 1);
      }
  const int top = ((slit_row % rows) + rows) % rows;
  auto on_slit = [&](int i, int j) {
    return j == top && ((i - slit_column) % columns + columns) % columns < slit_length;
  };
  for (int sheet = 0; sheet < 2; ++sheet)
    for (int j = 0; j < rows; ++j)
      for (int i = 0; i < columns; ++i) {
        const int k = id(sheet, i, j);
        sb.glue(L[k], 1, 2, U[id(sheet, (i + 1) % columns, j)], 0, 2);
        const int other = on_slit(i, j) ? 1 - sheet : sheet;
        sb.glue(U[k], 2, 1, L[id(other, i, (j + 1) % rows)], 0, 1);
      }
  return sb.build("slit_double_torus");
}

}  // namespace dyck
