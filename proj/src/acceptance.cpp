#include "dyck/acceptance.hpp"

#include "dyck/builders.hpp"
#include "dyck/capacity.hpp"
#include "dyck/constants.hpp"
#include "dyck/geodesic.hpp"
#include "dyck/hexopt.hpp"
#include "dyck/surgery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace dyck {

namespace {

constexpr double pi = std::numbers::pi;
constexpr mpfr_prec_t bits = 256;

Check near(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, "abs", std::abs(value - target) <= tol};
}
Check at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, ">=", value >= bound};
}
Check at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, "<=", value <= bound};
}
Check holds(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, "abs", ok}; }

std::string num(double x, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

struct Context {
  AcceptanceOptions opt;
  SurfaceParameters p;
  int threads = 1;
  std::optional<ConeSurface> extremal;
  std::optional<EnumerationResult> geodesics;
  std::optional<CapacityEstimate> upper;
  std::optional<CapacityEstimate> lower;

  const ConeSurface& surface() {
    if (!extremal) extremal = build_extremal_dyck(p);
    return *extremal;
  }
  const EnumerationResult& closed_geodesics() {
    if (!geodesics) geodesics = enumerate_closed_geodesics(surface(), {opt.l_max, opt.budget, threads});
    return *geodesics;
  }
};

void constants(Context&, CriterionResult& r) {
  const double h = h_enclose(bits).mid();
  const double ell = ell_enclose(bits).mid();
  const double cv = cos_vartheta().enclose(bits).mid();
  const double pih2 = (Interval::pi(bits) * h_squared().enclose(bits)).mid();
  r.checks.push_back(near("h", h, 0.2248796, 5e-8));
  r.checks.push_back(near("ell", ell, 4.397146, 5e-7));
  r.checks.push_back(near("cos vartheta", cv, 0.5954331, 1e-7));
  r.checks.push_back(near("pi h^2", pih2, 0.15887, 5e-6));
}

void area(Context& c, CriterionResult& r) {
  const SurfaceParameters& p = c.p;
  const double a1 = 2 * p.delta + 3 * p.h * std::sqrt(1 - 4 * p.h * p.h);
  const double a2 = 1 + sqrt_enclose(area_radicand(), bits).mid() / 12;
  r.checks.push_back(near("2 delta + 3h sqrt(1-4h^2)", a1, 1.15279, 5e-6));
  r.checks.push_back(near("1 + sqrt(169-38 sqrt19)/12", a2, 1.15279, 5e-6));
  r.checks.push_back(near("expressions agree", a1 - a2, 0.0, 1e-12));
  r.notes.push_back("exact area " + num(area_extremal_enclose(bits).mid(), 12));
}

void systole_check(Context& c, CriterionResult& r) {
  const EnumerationResult& e = c.closed_geodesics();
  if (e.geodesics.empty()) throw std::runtime_error("no closed geodesic <= " + num(c.opt.l_max));
  const double sys = e.geodesics.front().length;
  int shorter = 0, one_sided = 0, chains = 0;
  for (const auto& g : e.geodesics) {
    if (g.length < 1.0 - 1e-6) ++shorter;
    if (g.one_sided) ++one_sided;
    if (g.kind == GeodesicKind::saddle_chain) ++chains;
  }
  r.checks.push_back(near("systole", sys, 1.0, 1e-6));
  r.checks.push_back(near("closed geodesics shorter than 1", shorter, 0, 0));
  r.checks.push_back(holds("search complete", !e.partial));
  r.checks.push_back(near("sys^2 / area", sys * sys / c.surface().area(), 0.86745, 5e-6));
  r.notes.push_back("exact ratio 12/(12+sqrt(169-38 sqrt19)) = " +
                    num(12 / (12 + sqrt_enclose(area_radicand(), bits).mid()), 12));
  r.notes.push_back(std::to_string(e.geodesics.size()) + " closed geodesics <= " + num(c.opt.l_max) + " (" +
                    std::to_string(one_sided) + " one-sided, " + std::to_string(chains) + " saddle chains)");
}

void gauss_bonnet(Context& c, CriterionResult& r) {
  for (const auto& rel : check_defining_relations(c.p)) r.checks.push_back(near(rel.relation, rel.value, 0.0, 1e-12));
  auto defect = [](const ConeSurface& s) {
    double sum = 0.0;
    for (const Vertex& v : s.vertices()) sum += 2 * pi - v.angle;
    return sum;
  };
  const ConeSurface& s = c.surface();
  const ConeSurface cover = orientation_double_cover(s);
  r.checks.push_back(near("sum(2 pi - angle) on D<=0", defect(s), -2 * pi, 1e-9));
  r.checks.push_back(near("sum(2 pi - angle) on double cover", defect(cover), -4 * pi, 1e-9));
}

void hexagon(Context& c, CriterionResult& r) {
  const double h = c.p.h, theta = c.p.theta;
  const HexMinimum m = minimize_hex({0.25, h, 0.25}, 1e-3, 0.0, c.threads);
  r.checks.push_back(near("min area", m.area, 0.2008510, 1e-6));
  r.checks.push_back(near("min - h sqrt(1-4h^2)", m.area - h * std::sqrt(1 - 4 * h * h), 0.0, 1e-6));
  r.checks.push_back(near("alpha1", m.alpha[0], theta, 1e-4));
  r.checks.push_back(near("alpha2", m.alpha[1], pi - 2 * theta, 1e-4));
  r.checks.push_back(near("alpha3", m.alpha[2], theta, 1e-4));
  r.checks.push_back(holds("convexity of tan(x/2) on search path", m.convexity_verified));
  r.notes.push_back("grid minimum " + num(m.grid_area, 10) + " over " + std::to_string(m.grid_points) + " points");
}

void tradeoff(Context&, CriterionResult& r) {
  const TradeoffResult t = optimize_mobius_tradeoff();
  r.checks.push_back(near("h'^2 - (8 - sqrt19)/72", t.u - t.exact_u, 0.0, 1e-8));
  r.checks.push_back(at_most("|576u^2 - 128u + 5|", t.residual, 1e-9));
  r.notes.push_back("h* = " + num(t.h, 12) + ", A(h*) = " + num(t.area, 12));
}

void cases(Context& c, CriterionResult& r) {
  for (const CaseBound& b : case_bounds(c.p)) {
    r.checks.push_back(at_least(b.name + " margin", b.margin, 0.006));
    r.notes.push_back(b.name + " bound " + num(b.lower_bound, 10));
  }
}

void capacity_upper(Context& c, CriterionResult& r) {
  c.upper = flat_capacity_upper(c.p, c.opt.mesh_h);
  r.checks.push_back(near("closed form", c.upper->value, 2.28308, 5e-6));
  r.checks.push_back(near("mesh sublevel area - closed form", c.upper->cross_check - c.upper->value, 0.0, 1e-3));
  r.notes.push_back(c.upper->method);
}

void capacity_lower(Context& c, CriterionResult& r) {
  c.lower = muetzel_bound(hyperbolic_collar(c.p.ell), c.opt.quad_tol);
  r.checks.push_back(at_least("muetzel integral", c.lower->value, 2.29461 - 5e-6));
  r.checks.push_back(near("gauss-kronrod - trapezoid", c.lower->value - c.lower->cross_check, 0.0, 1e-6));
  for (double w : {0.3, 0.8, 1.5}) {
    const double v = muetzel_bound(constant_collar(c.p.ell, w), c.opt.quad_tol).value;
    r.checks.push_back(near("constant width " + num(w, 2), v, c.p.ell / (gudermann(w) - gudermann(-w)), c.opt.quad_tol));
  }
}

void separation(Context& c, CriterionResult& r) {
  if (!c.upper) c.upper = flat_capacity_upper(c.p, 0.0);
  if (!c.lower) c.lower = muetzel_bound(hyperbolic_collar(c.p.ell), c.opt.quad_tol);
  r.checks.push_back(at_least("2.29 - upper", 2.29 - c.upper->value, 4e-3));
  r.checks.push_back(at_least("lower - 2.29", c.lower->value - 2.29, 4e-3));
}

void fem(Context& c, CriterionResult& r) {
  const double cyl = fem_capacity(build_flat_cylinder(2.0, 0.5), 0.05).value;
  r.checks.push_back(near("cylinder / (circumference/height)", cyl / 4.0, 1.0, 5e-3));
  const double ring = fem_capacity(build_round_annulus(1.0, std::exp(1.0), 0.01), 0.01).value;
  r.checks.push_back(near("annulus / (2 pi / ln R)", ring / (2 * pi), 1.0, 5e-3));
  const ConeSurface a = build_collar_flat(c.p);
  double longest = 0.0;
  for (const auto& l : a.lengths()) longest = std::max({longest, l[0], l[1], l[2]});
  std::vector<double> energy;
  for (int n : {8, 16, 32}) energy.push_back(fem_capacity(a, longest / n * (1 + 1e-9)).value);
  const double upper = c.upper ? c.upper->value : flat_capacity_upper(c.p, 0.0).value;
  r.checks.push_back(at_most("FEM(A<=0) - upper", energy.back() - upper, 1e-3));
  r.checks.push_back(at_most("refinement 16 - 8", energy[1] - energy[0], 1e-4));
  r.checks.push_back(at_most("refinement 32 - 16", energy[2] - energy[1], 1e-4));
  const double hyp = fem_capacity(build_fermi_chart(hyperbolic_collar(c.p.ell), 0.02), 0.02).value;
  r.notes.push_back("FEM A<=0: " + num(energy[0], 9) + ", " + num(energy[1], 9) + ", " + num(energy[2], 9));
  r.notes.push_back("FEM A-1 chart (mesh_h 0.02): " + num(hyp, 9));
}

void properties(Context& c, CriterionResult& r) {
  const ConeSurface& s = c.surface();
  int bad = 0;
  for (const auto& g : c.closed_geodesics().geodesics)
    if (!check_local_geodesic(s, g).empty()) ++bad;
  r.checks.push_back(near("paths failing local geodesy", bad, 0, 0));

  const ConeSurface a = build_collar_flat(c.p);
  const DistanceField f(a, {{}, {}, a.marks().soul}, 0.6);
  double prev = 0.0, drop = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double v = sublevel_area_at(a, f, 0.025 * k, 0.01);
    drop = std::max(drop, prev - v);
    prev = v;
  }
  r.checks.push_back(at_most("largest decrease of sublevel area in r", drop, 0.0));

  const auto& W = s.marks().weierstrass;
  const VoronoiResult cells = voronoi_cells(s, W, 0.01);
  for (size_t i = 0; i < W.size(); ++i) {
    const double poly = comparison_polygon(center_constraints(s, W[i], W)).area;
    r.checks.push_back(near("polygon - cell at W" + std::to_string(W[i]), poly - cells.cells[i].area, 0.0, 1e-3));
  }

  std::mt19937 rng(c.opt.seed);
  double worst = -INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_real_distribution<double> U(0.6, 1.6);
    const int cols = 3 + rng() % 4, rows = 3 + rng() % 4;
    const double wa = U(rng), wb = U(rng);
    const int len = 1 + rng() % (cols - 1);
    const int c0 = rng() % cols, r0 = rng() % rows;
    const ConeSurface t = build_slit_double_torus(wa, wb, cols, rows, c0, r0, len);
    std::vector<int> smooth;
    for (int v = 0; v < t.vertex_count(); ++v)
      if (!t.is_singular(v)) smooth.push_back(v);
    std::shuffle(smooth.begin(), smooth.end(), rng);
    const std::vector<int> C(smooth.begin(), smooth.begin() + 1 + rng() % 4);
    const VoronoiResult vc = voronoi_cells(t, C, 0.02, false, 2 * (wa + wb));
    for (size_t i = 0; i < C.size(); ++i)
      worst = std::max(worst, comparison_polygon(center_constraints(t, C[i], C)).area - vc.cells[i].area);
  }
  r.checks.push_back(at_most("max(polygon - cell) on 20 random cone surfaces", worst, 1e-3));
}

struct Spec {
  int id;
  const char* title;
  double limit;
  void (*run)(Context&, CriterionResult&);
};

const Spec specs[] = {
    {1, "constants", 1, constants},
    {2, "area", 1, area},
    {3, "systole", 120, systole_check},
    {4, "Gauss-Bonnet", 1, gauss_bonnet},
    {5, "hexagon optimization", 30, hexagon},
    {6, "tradeoff", 1, tradeoff},
    {7, "case analysis", 1, cases},
    {8, "capacity upper", 120, capacity_upper},
    {9, "capacity lower", 5, capacity_lower},
    {10, "separation", 1, separation},
    {11, "FEM consistency", 300, fem},
    {12, "property suites", 300, properties},
};

}  // namespace

std::string stage_of(int id) {
  static const std::map<int, std::string> stage{{1, "constants"}, {2, "area"},      {3, "systole"},
                                                {4, "build"},     {5, "hexopt"},    {6, "hexopt"},
                                                {7, "hexopt"},    {8, "capacity"},  {9, "capacity"},
                                                {10, "capacity"}, {11, "capacity"}, {12, "properties"}};
  auto it = stage.find(id);
  return it == stage.end() ? "unknown" : it->second;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx;
  ctx.opt = opt;
  ctx.p = paper_parameters();
  if (opt.perturb_h != 0.0) ctx.p.h += opt.perturb_h;
  ctx.threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::vector<CriterionResult> out;
  for (const Spec& s : specs) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), s.id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = s.id;
    r.title = s.title;
    r.stage = stage_of(s.id);
    r.limit = s.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s.run(ctx, r);
    } catch (const std::exception& e) {
      r.errored = true;
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = !r.errored && r.seconds <= r.limit &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  char head[64];
  std::snprintf(head, sizeof head, "#%-2d %s  %-22s", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str());
  os << head;
  if (r.errored) os << " error: " << r.error << ";";
  for (const Check& c : r.checks) {
    os << " " << c.name << " = " << num(c.value);
    if (c.relation == "abs")
      os << " (" << num(c.target) << " +- " << num(c.tol, 3) << ")";
    else
      os << " (" << c.relation << " " << num(c.target) << ")";
    if (!c.passed) os << " FAILED";
    os << ";";
  }
  char tail[64];
  std::snprintf(tail, sizeof tail, " [%.2f s, limit %g s%s]", r.seconds, r.limit, r.seconds > r.limit ? ", OVER" : "");
  os << tail;
  return os.str();
}

}  // namespace dyck
