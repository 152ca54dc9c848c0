#pragma once

#include "dyck/constants.hpp"
#include "dyck/surface.hpp"

#include <functional>
#include <string>

namespace dyck {

/// H(s) = 2 arctan(e^s).
double gudermann(double s);

/// arctanh(cosh(t) tanh(ell/4)); throws std::domain_error when the argument reaches 1.
double fermi_half_width(double t, double ell);

/// Collar in Fermi coordinates (t, s): the region b(t) <= s <= a(t), t periodic with period ell.
struct CollarProfile {
  double ell = 0.0;
  std::function<double(double)> a;
  std::function<double(double)> b;
  /// Symmetry: a and b have this period and are even about multiples of period/2.
  /// Zero means no declared symmetry.
  double period = 0.0;
};

/// The profile of the hyperbolic collar: a(t) = -b(t) = fermi_half_width on
/// [-ell/12, ell/12], extended with period ell/6.
CollarProfile hyperbolic_collar(double ell);
CollarProfile constant_collar(double ell, double w);

enum class CapacityKind { upper_closed_form, upper_mesh, lower_muetzel, fem_rayleigh };
std::string to_string(CapacityKind k);

struct CapacityEstimate {
  CapacityKind kind = CapacityKind::upper_closed_form;
  double value = 0.0;
  double error_estimate = 0.0;
  std::string method;
  double cross_check = 0.0;  // second scheme, mesh, or coarser level
  bool consistent = true;     // cross-check within its tolerance
};

/// Lower bound integral of dt / (H(a(t)) - H(b(t))) over one period of t.
CapacityEstimate muetzel_bound(const CollarProfile& p, double tol = 1e-8);

/// Per-singularity correction [tan(theta/2) - theta/2] h^2.
double corner_correction(const SurfaceParameters& p);

/// 2 area(D<=0) - 12 corner_correction, with a mesh cross-check of the
/// sublevel area {d(x, C) <= 1/2} on A<=0 when `mesh_h` > 0.
CapacityEstimate flat_capacity_upper(const SurfaceParameters& p, double mesh_h = 0.01);

/// P1 finite-element capacity of an annulus: zero on one boundary component,
/// one on the other. The surface is refined until every edge is at most mesh_h.
CapacityEstimate fem_capacity(const ConeSurface& annulus, double mesh_h, double solver_tol = 1e-10);

/// Plane annulus r_in <= |x| <= r_out, triangulated on a log-polar grid whose
/// cells have side about mesh_h on the inner circle.
ConeSurface build_round_annulus(double r_in, double r_out, double mesh_h);

/// Conformally flat chart of the hyperbolic collar: t in [0, ell) periodic,
/// |sigma| <= H(a(t)) - pi/2. Columns are aligned with multiples of ell/12.
ConeSurface build_fermi_chart(const CollarProfile& p, double mesh_h);

struct SeparationCertificate {
  double threshold = 2.29;
  CapacityEstimate upper;
  CapacityEstimate lower;
  double upper_margin = 0.0;  // threshold - upper
  double lower_margin = 0.0;  // lower - threshold
  double tol = 0.0;
  bool separated = false;
  // FEM consistency, filled when requested
  double fem_flat = 0.0;
  double fem_hyperbolic = 0.0;
  bool fem_consistent = true;
};

SeparationCertificate separation_certificate(const SurfaceParameters& p, double tol = 1e-8, double fem_mesh_h = 0.0);

}  // namespace dyck
