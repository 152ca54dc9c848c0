#pragma once

#include "dyck/constants.hpp"

#include <array>
#include <string>
#include <vector>

namespace dyck {

/// Hexagon around a Voronoi centre: distances to the three apex lines and
/// the apex angles.
struct HexagonSpec {
  std::array<double, 3> d{};
  std::array<double, 3> alpha{};
};

/// Sum of 2 d_i^2 tan(alpha_i / 2). Throws on invalid angles or distances.
double hex_area_bound(const HexagonSpec& spec);

struct HexMinimum {
  std::array<double, 3> alpha{};
  double area = 0.0;
  // coarse grid stage
  std::array<double, 3> grid_alpha{};
  double grid_area = 0.0;
  long grid_points = 0;
  long degenerate_excluded = 0;
  // tan(x/2) second differences along the search path were all positive
  bool convexity_verified = false;
  // d1 == d3 and every asymmetric grid point was dominated by its symmetrization
  bool symmetric_reduction = false;
};

/// Global minimum of hex_area_bound over the open simplex sum(alpha) = pi.
/// `phase` in [0, 1) shifts the grid by a fraction of one step.
HexMinimum minimize_hex(const std::array<double, 3>& d, double resolution = 1e-3,
                        double phase = 0.0, int threads = 0);

/// A(h) = 2(1/2 - h) + 3 h sqrt(1 - 4h^2).
double tradeoff_area(double h);

struct TradeoffResult {
  double h = 0.0;
  double area = 0.0;
  double u = 0.0;               // h^2
  double residual = 0.0;        // |576u^2 - 128u + 5|
  double golden_h = 0.0;        // golden-section oracle on -A
  double exact_u = 0.0;         // (8 - sqrt 19)/72
};

TradeoffResult optimize_mobius_tradeoff(double lo = 0.0, double hi = 0.25);

struct CaseBound {
  std::string name;
  double lower_bound = 0.0;
  double margin = 0.0;  // over area(D<=0)
};

std::vector<CaseBound> case_bounds(const SurfaceParameters& p);

double extremal_area(const SurfaceParameters& p);
/// Lower area bounds for faces of the collar complement.
double disk_face_bound(double h);              // pi h^2
double strip_face_bound(double h, double x);   // 2 h x
double two_edge_face_bound(double h);          // h

}  // namespace dyck
