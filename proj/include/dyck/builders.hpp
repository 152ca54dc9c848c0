#pragma once

#include "dyck/constants.hpp"
#include "dyck/surface.hpp"

#include <array>

namespace dyck {

/// Isosceles trapezoid, counterclockwise from the short side:
/// (-s/2, 0), (s/2, 0), (L/2, h), (-L/2, h).
std::array<Vec2, 4> build_trapezoid(double short_side, double h, double alpha);
/// Same, after checking the defining relations of `p` to 1e-9.
std::array<Vec2, 4> build_trapezoid(const SurfaceParameters& p);

/// Extremal surface: six trapezoids forming the hexagonal annulus plus a
/// Moebius band of width 2 delta triangulated by `band_columns` columns
/// (a positive multiple of 3). Marks the Weierstrass points, p, q, and the
/// band faces as collar faces.
ConeSurface build_extremal_dyck(const SurfaceParameters& p, int band_columns = 3);

/// Flat torus R^2 / (a Z x b Z): one vertex and two triangles, or with
/// `star` a centre vertex and four triangles (keeps all rectangle symmetries).
ConeSurface build_flat_torus(double a = 1.0, double b = 1.0, bool star = false);
/// Flat Klein bottle from the unit square: (x,0)~(x,1), (0,y)~(1,1-y).
ConeSurface build_klein_bottle(double side = 1.0);

/// Flat cylinder of the given circumference and height; the middle circle
/// is marked as the soul.
ConeSurface build_flat_cylinder(double circumference, double height, int columns = 4);

/// Double cover of the flat torus R^2 / (a Z x b Z) branched over the two
/// ends of a horizontal slit. The torus is a columns x rows grid; the slit
/// runs along the top of row `slit_row` over `slit_length` cells from
/// column `slit_column`. Genus 2 with two cone points of angle 4 pi.
ConeSurface build_slit_double_torus(double a, double b, int columns, int rows, int slit_column, int slit_row,
                                    int slit_length);

/// Annulus A<=0: cylinder of circumference 2 and height 2 delta with six
/// trapezoids glued along each boundary circle; soul C marked as mesh edges.
ConeSurface build_collar_flat(const SurfaceParameters& p);

}  // namespace dyck
