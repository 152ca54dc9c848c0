#include "dyck/capacity.hpp"

#include "dyck/builders.hpp"
#include "dyck/geodesic.hpp"
#include "dyck/surgery.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/CholmodSupport>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dyck {

namespace {

constexpr double pi = std::numbers::pi;

std::string describe(const char* scheme, double tol) {
  std::ostringstream os;
  os << scheme << " tol=" << tol;
  return os.str();
}

// Periodic grid of (columns x rows) quads, each split along its a-c diagonal.
// pos(j, k) for j in [0, columns] and k in [0, rows]; column `columns` is
// identified with column 0.
template <class Pos>
ConeSurface grid_cylinder(const std::string& name, int columns, int rows, Pos pos) {
  SurfaceBuilder sb;
  std::vector<int> L(columns * rows), U(columns * rows);
  auto id = [&](int j, int k) { return k * columns + j; };
  for (int k = 0; k < rows; ++k)
    for (int j = 0; j < columns; ++j) {
      const Vec2 a = pos(j, k), b = pos(j + 1, k), c = pos(j + 1, k + 1), d = pos(j, k + 1);
      L[id(j, k)] = sb.add_face(a, b, c);
      U[id(j, k)] = sb.add_face(a, c, d);
      sb.glue(L[id(j, k)], 0, 2, U[id(j, k)], 0, 1);
    }
  for (int k = 0; k < rows; ++k)
    for (int j = 0; j < columns; ++j) {
      sb.glue(L[id(j, k)], 1, 2, U[id((j + 1) % columns, k)], 0, 2);
      if (k + 1 < rows) sb.glue(U[id(j, k)], 2, 1, L[id(j, k + 1)], 0, 1);
    }
  return sb.build(name);
}

double max_edge(const ConeSurface& s) {
  double m = 0.0;
  for (const auto& l : s.lengths()) m = std::max({m, l[0], l[1], l[2]});
  return m;
}

}  // namespace

double gudermann(double s) { return 2.0 * std::atan(std::exp(s)); }

double fermi_half_width(double t, double ell) {
  const double x = std::cosh(t) * std::tanh(0.25 * ell);
  if (!(x < 1.0)) throw std::domain_error("fermi_half_width: cosh(t) tanh(ell/4) >= 1");
  return std::atanh(x);
}

CollarProfile hyperbolic_collar(double ell) {
  if (!(ell > 0.0)) throw std::invalid_argument("collar length must be positive");
  CollarProfile p;
  p.ell = ell;
  p.period = ell / 6.0;
  const double period = p.period;
  p.a = [ell, period](double t) { return fermi_half_width(t - period * std::round(t / period), ell); };
  p.b = [a = p.a](double t) { return -a(t); };
  return p;
}

CollarProfile constant_collar(double ell, double w) {
  CollarProfile p;
  p.ell = ell;
  p.period = ell;
  p.a = [w](double) { return w; };
  p.b = [w](double) { return -w; };
  return p;
}

std::string to_string(CapacityKind k) {
  switch (k) {
    case CapacityKind::upper_closed_form: return "upper_closed_form";
    case CapacityKind::upper_mesh: return "upper_mesh";
    case CapacityKind::lower_muetzel: return "lower_muetzel";
    case CapacityKind::fem_rayleigh: return "fem_rayleigh";
  }
  return "unknown";
}

CapacityEstimate muetzel_bound(const CollarProfile& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(p.ell > 0.0) || !p.a || !p.b) throw std::invalid_argument("incomplete collar profile");
  auto f = [&](double t) {
    const double gap = gudermann(p.a(t)) - gudermann(p.b(t));
    if (!(gap > 0.0)) throw std::domain_error("collar profile requires a(t) > b(t)");
    return 1.0 / gap;
  };
  // even about multiples of period/2: integrate half a period
  double lo = 0.0, hi = p.ell, factor = 1.0;
  if (p.period > 0.0) {
    const double copies = p.ell / p.period;
    if (std::abs(copies - std::round(copies)) > 1e-9) throw std::invalid_argument("period must divide ell");
    hi = 0.5 * p.period;
    factor = 2.0 * std::round(copies);
  }
  double gk_err = 0.0;
  const double gk = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 30, tol / factor, &gk_err);
  double tr_err = 0.0;
  const double tr = boost::math::quadrature::trapezoidal(f, lo, hi, tol / factor, 22, &tr_err);

  CapacityEstimate e;
  e.kind = CapacityKind::lower_muetzel;
  e.value = factor * gk;
  e.cross_check = factor * tr;
  e.error_estimate = std::max(factor * gk_err, std::abs(e.value - e.cross_check));
  e.consistent = std::abs(e.value - e.cross_check) <= 2.0 * tol;
  e.method = describe("gauss-kronrod-15 + trapezoid", tol);
  return e;
}

double corner_correction(const SurfaceParameters& p) {
  return (std::tan(0.5 * p.theta) - 0.5 * p.theta) * p.h * p.h;
}

CapacityEstimate flat_capacity_upper(const SurfaceParameters& p, double mesh_h) {
  CapacityEstimate e;
  e.kind = CapacityKind::upper_closed_form;
  const double area = 2.0 * p.delta + 3.0 * p.h * std::sqrt(1.0 - 4.0 * p.h * p.h);
  e.value = 2.0 * area - 12.0 * corner_correction(p);
  e.error_estimate = 1e-14;
  e.method = "closed form";
  if (mesh_h > 0.0) {
    const ConeSurface annulus = build_collar_flat(p);
    const AreaEstimate a = sublevel_area(annulus, DistanceSource{{}, {}, annulus.marks().soul}, 0.5, mesh_h);
    e.cross_check = a.value;
    e.consistent = std::abs(a.value - e.value) <= 1e-3;
    std::ostringstream os;
    os << "closed form; mesh sublevel area at mesh_h=" << mesh_h << "," << 0.5 * mesh_h << " (Richardson)";
    e.method = os.str();
  }
  return e;
}

CapacityEstimate fem_capacity(const ConeSurface& annulus, double mesh_h, double solver_tol) {
  if (!(mesh_h > 0.0)) throw std::invalid_argument("mesh_h must be positive");
  if (annulus.euler_characteristic() != 0) throw std::invalid_argument("fem_capacity: not an annulus (chi != 0)");
  const auto loops = annulus.boundary_loops();
  if (loops.size() != 2) throw std::invalid_argument("fem_capacity: an annulus needs exactly two boundary components");
  if (!annulus.orientable()) throw std::invalid_argument("fem_capacity: surface is not orientable");

  const int n = std::max(1, static_cast<int>(std::ceil(max_edge(annulus) / mesh_h - 1e-9)));
  const ConeSurface s = n > 1 ? refine(annulus, n) : annulus;
  const auto bl = s.boundary_loops();

  const int nv = s.vertex_count();
  std::vector<int> label(nv, -1);
  for (int c = 0; c < 2; ++c)
    for (const EdgeRef& e : bl[c]) {
      label[s.vertex_of(e.face, e.slot)] = c;
      label[s.vertex_of(e.face, (e.slot + 1) % 3)] = c;
    }
  std::vector<int> index(nv, -1);
  int ni = 0;
  for (int v = 0; v < nv; ++v)
    if (label[v] < 0) index[v] = ni++;
  if (ni == 0) throw std::invalid_argument("fem_capacity: no interior vertices");

  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> kii;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  std::vector<Trip> kall;
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& P = s.face_coords(f);
    const double area2 = orient(P[0], P[1], P[2]);
    double bx[3], by[3];
    for (int i = 0; i < 3; ++i) {
      const Vec2 d = P[(i + 2) % 3] - P[(i + 1) % 3];
      // gradient of the hat function i times area2, rotated
      bx[i] = -d.y;
      by[i] = d.x;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double k = (bx[i] * bx[j] + by[i] * by[j]) / (2.0 * area2);
        const int vi = s.vertex_of(f, i), vj = s.vertex_of(f, j);
        kall.emplace_back(vi, vj, k);
        if (index[vi] < 0) continue;
        if (index[vj] >= 0)
          kii.emplace_back(index[vi], index[vj], k);
        else if (label[vj] == 1)
          rhs[index[vi]] -= k;
      }
  }
  Eigen::SparseMatrix<double> K(ni, ni);
  K.setFromTriplets(kii.begin(), kii.end());
  Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>> chol(K);
  if (chol.info() != Eigen::Success) throw std::runtime_error("fem_capacity: factorization failed");
  Eigen::VectorXd ui = chol.solve(rhs);
  // polish with CG from the direct solution
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(solver_tol);
  cg.compute(K);
  ui = cg.solveWithGuess(rhs, ui);
  if (cg.info() != Eigen::Success) throw std::runtime_error("fem_capacity: linear solve did not converge");

  Eigen::VectorXd u(nv);
  for (int v = 0; v < nv; ++v) u[v] = index[v] >= 0 ? ui[index[v]] : static_cast<double>(label[v]);
  Eigen::SparseMatrix<double> Kf(nv, nv);
  Kf.setFromTriplets(kall.begin(), kall.end());

  CapacityEstimate e;
  e.kind = CapacityKind::fem_rayleigh;
  e.value = u.dot(Kf * u);
  e.error_estimate = cg.error() * e.value;
  std::ostringstream os;
  os << "P1 FEM (CHOLMOD + CG), refine " << n << ", " << s.face_count() << " triangles, CG iterations " << cg.iterations();
  e.method = os.str();
  return e;
}

ConeSurface build_round_annulus(double r_in, double r_out, double mesh_h) {
  if (!(r_in > 0.0) || !(r_out > r_in) || !(mesh_h > 0.0)) throw std::invalid_argument("bad annulus dimensions");
  const int columns = std::max(8, static_cast<int>(std::ceil(2.0 * pi * r_in / mesh_h)));
  const double dtheta = 2.0 * pi / columns, logr = std::log(r_out / r_in);
  const int rows = std::max(1, static_cast<int>(std::ceil(logr / dtheta)));
  return grid_cylinder("round_annulus", columns, rows, [&](int j, int k) {
    const double r = k == rows ? r_out : r_in * std::exp(logr * k / rows);
    const double th = -dtheta * (j % columns);
    return Vec2{r * std::cos(th), r * std::sin(th)};
  });
}

ConeSurface build_fermi_chart(const CollarProfile& p, double mesh_h) {
  if (!(mesh_h > 0.0)) throw std::invalid_argument("mesh_h must be positive");
  const int columns = 12 * std::max(1, static_cast<int>(std::ceil(p.ell / 12.0 / mesh_h)));
  double wmax = 0.0;
  auto w = [&](double t) { return 0.5 * (gudermann(p.a(t)) - gudermann(p.b(t))); };
  auto c = [&](double t) { return 0.5 * (gudermann(p.a(t)) + gudermann(p.b(t))) - 0.5 * pi; };
  for (int j = 0; j < columns; ++j) wmax = std::max(wmax, w(p.ell * j / columns));
  const int rows = std::max(2, static_cast<int>(std::ceil(2.0 * wmax / mesh_h)));
  return grid_cylinder("fermi_chart", columns, rows, [&](int j, int k) {
    const double t = p.ell * (j % columns) / columns;
    return Vec2{p.ell * j / columns, c(t) + w(t) * (-1.0 + 2.0 * k / rows)};
  });
}

SeparationCertificate separation_certificate(const SurfaceParameters& p, double tol, double fem_mesh_h) {
  SeparationCertificate c;
  c.tol = tol;
  c.upper = flat_capacity_upper(p, 0.0);
  c.lower = muetzel_bound(hyperbolic_collar(p.ell), std::min(tol, 1e-8));
  c.upper_margin = c.threshold - c.upper.value;
  c.lower_margin = c.lower.value - c.threshold;
  c.separated = c.upper_margin > tol && c.lower_margin > tol && c.lower.consistent;
  if (fem_mesh_h > 0.0) {
    c.fem_flat = fem_capacity(build_collar_flat(p), fem_mesh_h).value;
    c.fem_hyperbolic = fem_capacity(build_fermi_chart(hyperbolic_collar(p.ell), fem_mesh_h), fem_mesh_h).value;
    c.fem_consistent = c.fem_flat <= c.upper.value + 1e-3 && c.fem_hyperbolic >= c.lower.value - 1e-3 &&
                       c.fem_flat < c.fem_hyperbolic;
  }
  return c;
}

}  // namespace dyck
