#include "dyck/acceptance.hpp"
#include "dyck/builders.hpp"
#include "dyck/capacity.hpp"
#include "dyck/constants.hpp"
#include "dyck/geodesic.hpp"
#include "dyck/hexopt.hpp"
#include "dyck/mesh_io.hpp"
#include "dyck/surgery.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace {

using json = nlohmann::ordered_json;
using namespace dyck;

constexpr const char* version = "1.0.0";

enum Exit { ok = 0, bad_input = 2, computation_failure = 3, acceptance_failure = 4 };

struct ComputationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int digits = 15;
  double l_max = 1.2;
  double mesh_h = 0.01;
  double tol = 1e-8;
  bool json = false;
  std::string out;
  unsigned seed = 20260101;
  std::string format = "text";
  long budget = 20'000'000;
  int threads = 0;

  std::string effective_format() const { return json ? "json" : format; }
  int thread_count() const {
    return threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  nlohmann::ordered_json to_json() const {
    return {{"digits", digits}, {"lmax", l_max},  {"mesh_h", mesh_h}, {"tol", tol},
            {"seed", seed},     {"budget", budget}, {"format", effective_format()}};
  }
};

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string params_digest(const SurfaceParameters& p) {
  json j = {{"alpha", p.alpha}, {"theta", p.theta}, {"h", p.h}, {"delta", p.delta}, {"short_side", p.short_side}, {"ell", p.ell}};
  return fnv1a(j.dump());
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string fixed(double x, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// constants ------------------------------------------------------------------

int cmd_constants(const RunConfig& cfg) {
  std::vector<NamedConstant> table;
  for (const auto& name : constant_names()) table.push_back(named_constant(name, cfg.digits));
  const std::string fmt = cfg.effective_format();
  std::ostringstream os;
  if (fmt == "json") {
    json arr = json::array();
    for (const auto& c : table) {
      json e = {{"name", c.name}, {"value", c.value}};
      e["exact"] = c.exact ? json(*c.exact) : json(nullptr);
      e["reported"] = c.reported ? json(*c.reported) : json(nullptr);
      arr.push_back(e);
    }
    os << json{{"tool_version", version}, {"digits", cfg.digits}, {"constants", arr}}.dump(2);
  } else if (fmt == "csv") {
    os << "name,value,exact,reported\n";
    for (const auto& c : table)
      os << c.name << "," << c.value << ",\"" << c.exact.value_or("") << "\"," << c.reported.value_or("") << "\n";
  } else {
    for (const auto& c : table) {
      os << c.name << " = " << c.value;
      if (c.exact) os << "   [" << *c.exact << "]";
      if (c.reported) os << "   reported " << *c.reported;
      os << "\n";
    }
  }
  emit(cfg, os.str());
  return ok;
}

// build ----------------------------------------------------------------------

ConeSurface make_surface(const std::string& target, int columns) {
  const SurfaceParameters p = paper_parameters();
  if (target == "extremal") return build_extremal_dyck(p, columns);
  if (target == "collar") return build_collar_flat(p);
  if (target == "double-cover") return orientation_double_cover(build_extremal_dyck(p, columns));
  if (target == "klein") return build_klein_bottle();
  if (target == "torus") return build_flat_torus();
  throw std::invalid_argument("unknown surface " + target);
}

json surface_summary(const ConeSurface& s) {
  json angles = json::array();
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.is_singular(v)) angles.push_back({{"vertex", v}, {"angle", s.vertex(v).angle}});
  return {{"name", s.name()},
          {"faces", s.face_count()},
          {"vertices", s.vertex_count()},
          {"euler_characteristic", s.euler_characteristic()},
          {"orientable", s.orientable()},
          {"boundary_components", s.boundary_components()},
          {"area", s.area()},
          {"gauss_bonnet_residual", s.gauss_bonnet_residual()},
          {"cone_points", angles}};
}

int cmd_build(const RunConfig& cfg, const std::string& target, int columns) {
  const ConeSurface s = make_surface(target, columns);
  json j = surface_summary(s);
  if (target == "extremal" || target == "double-cover") {
    json rel = json::array();
    for (const auto& r : check_defining_relations(paper_parameters()))
      rel.push_back({{"relation", r.relation}, {"residual", r.value}, {"flagged", r.flagged}});
    j["relations"] = rel;
  }
  if (cfg.effective_format() == "json") {
    emit(cfg, j.dump(2));
  } else {
    std::ostringstream os;
    os << s.name() << ": " << s.face_count() << " faces, " << s.vertex_count() << " vertices, chi "
       << s.euler_characteristic() << (s.orientable() ? ", orientable" : ", non-orientable") << ", area "
       << fixed(s.area(), 12) << ", Gauss-Bonnet residual " << s.gauss_bonnet_residual() << "\n";
    for (const auto& c : j["cone_points"])
      os << "  vertex " << c["vertex"].get<int>() << " angle " << fixed(c["angle"].get<double>(), 12) << "\n";
    emit(cfg, os.str());
  }
  return ok;
}

// systole --------------------------------------------------------------------

int cmd_systole(const RunConfig& cfg) {
  const ConeSurface s = build_extremal_dyck(paper_parameters());
  const EnumerationResult e = enumerate_closed_geodesics(s, {cfg.l_max, cfg.budget, cfg.thread_count()});
  if (e.geodesics.empty()) {
    std::cerr << "no closed geodesic <= " << cfg.l_max << (e.partial ? " (search budget exhausted)" : "") << "\n";
    return computation_failure;
  }
  const double sys = e.geodesics.front().length;
  if (cfg.effective_format() == "json") {
    json j = {{"lmax", cfg.l_max},
              {"partial", e.partial},
              {"systole", sys},
              {"area", s.area()},
              {"systolic_ratio", sys * sys / s.area()},
              {"geodesics", json::parse(geodesics_to_json(e.geodesics))}};
    emit(cfg, j.dump(2));
  } else {
    std::ostringstream os;
    os << "systole " << fixed(sys, 12) << ", area " << fixed(s.area(), 12) << ", ratio "
       << fixed(sys * sys / s.area(), 12) << (e.partial ? " (partial search)" : "") << "\n";
    for (const auto& g : e.geodesics) {
      os << "  " << fixed(g.length, 12) << "  " << to_string(g.kind) << (g.one_sided ? " one-sided" : "");
      if (!g.cone_points().empty()) {
        os << " through";
        for (int v : g.cone_points()) os << " " << v;
      }
      os << "\n";
    }
    emit(cfg, os.str());
  }
  return e.partial ? computation_failure : ok;
}

// hexopt ---------------------------------------------------------------------

json hexopt_certificate(const RunConfig& cfg, bool& passed) {
  const SurfaceParameters p = paper_parameters();
  const HexMinimum m = minimize_hex({0.25, p.h, 0.25}, 1e-3, 0.0, cfg.thread_count());
  const TradeoffResult t = optimize_mobius_tradeoff();
  json cases = json::array();
  passed = true;
  for (const auto& c : case_bounds(p)) {
    cases.push_back({{"case", c.name}, {"lower_bound", c.lower_bound}, {"margin", c.margin}});
    passed = passed && c.margin >= 0.006;
  }
  const double closed = p.h * std::sqrt(1 - 4 * p.h * p.h);
  passed = passed && std::abs(m.area - closed) <= 1e-8 && t.residual <= 1e-9 && m.convexity_verified;
  return {{"case_bounds", cases},
          {"hex_argmin", {m.alpha[0], m.alpha[1], m.alpha[2]}},
          {"hex_min", m.area},
          {"hex_closed_form", closed},
          {"convexity_verified", m.convexity_verified},
          {"symmetric_reduction", m.symmetric_reduction},
          {"tradeoff_h", t.h},
          {"tradeoff_area", t.area},
          {"residuals", {{"quadratic", t.residual}, {"h_squared", t.u - t.exact_u}, {"hex", m.area - closed}}}};
}

int cmd_hexopt(const RunConfig& cfg) {
  bool passed = false;
  const json j = hexopt_certificate(cfg, passed);
  if (cfg.effective_format() == "json") {
    emit(cfg, j.dump(2));
  } else {
    std::ostringstream os;
    os << "hexagon minimum " << fixed(j["hex_min"].get<double>(), 12) << " at (" << fixed(j["hex_argmin"][0].get<double>())
       << ", " << fixed(j["hex_argmin"][1].get<double>()) << ", " << fixed(j["hex_argmin"][2].get<double>()) << ")\n";
    os << "tradeoff h* " << fixed(j["tradeoff_h"].get<double>(), 12) << ", residual "
       << j["residuals"]["quadratic"].get<double>() << "\n";
    for (const auto& c : j["case_bounds"])
      os << c["case"].get<std::string>() << " bound " << fixed(c["lower_bound"].get<double>()) << " margin "
         << fixed(c["margin"].get<double>()) << "\n";
    emit(cfg, os.str());
  }
  return passed ? ok : acceptance_failure;
}

// capacity -------------------------------------------------------------------

json estimate_json(const CapacityEstimate& e) {
  return {{"kind", to_string(e.kind)}, {"value", e.value},        {"error_estimate", e.error_estimate},
          {"cross_check", e.cross_check}, {"consistent", e.consistent}, {"method", e.method}};
}

int cmd_capacity(const RunConfig& cfg, const std::string& what) {
  const SurfaceParameters p = paper_parameters();
  json j;
  bool passed = true;
  if (what == "upper") {
    const auto e = flat_capacity_upper(p, cfg.mesh_h);
    j = estimate_json(e);
    passed = e.consistent;
  } else if (what == "lower") {
    const auto e = muetzel_bound(hyperbolic_collar(p.ell), cfg.tol);
    j = estimate_json(e);
    passed = e.consistent;
  } else if (what == "fem") {
    j = {{"fem_flat", estimate_json(fem_capacity(build_collar_flat(p), cfg.mesh_h))},
         {"fem_hyp", estimate_json(fem_capacity(build_fermi_chart(hyperbolic_collar(p.ell), cfg.mesh_h), cfg.mesh_h))}};
  } else if (what == "certify") {
    const auto c = separation_certificate(p, std::max(cfg.tol, 1e-8), cfg.mesh_h);
    j = {{"upper", c.upper.value},
         {"lower", c.lower.value},
         {"fem_flat", c.fem_flat},
         {"fem_hyp", c.fem_hyperbolic},
         {"threshold", c.threshold},
         {"margins", {{"upper", c.upper_margin}, {"lower", c.lower_margin}}},
         {"separated", c.separated},
         {"fem_consistent", c.fem_consistent},
         {"params_digest", params_digest(p)}};
    passed = c.separated && c.fem_consistent;
  } else {
    throw std::invalid_argument("unknown capacity command " + what);
  }
  if (cfg.effective_format() == "json") {
    emit(cfg, j.dump(2));
  } else {
    std::ostringstream os;
    for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_number_float() ? fixed(v.get<double>(), 12) : v.dump()) << "\n";
    emit(cfg, os.str());
  }
  return passed ? ok : acceptance_failure;
}

// certify --------------------------------------------------------------------

int cmd_certify(const RunConfig& cfg) {
  const SurfaceParameters p = paper_parameters();
  json rel = json::array();
  bool relations = true;
  for (const auto& r : check_defining_relations(p)) {
    rel.push_back({{"relation", r.relation}, {"residual", r.value}});
    relations = relations && !r.flagged;
  }
  bool hex_ok = false;
  const json hex = hexopt_certificate(cfg, hex_ok);
  const auto c = separation_certificate(p, std::max(cfg.tol, 1e-8));
  const json j = {{"tool_version", version},
                  {"params_digest", params_digest(p)},
                  {"relations", rel},
                  {"hexopt", hex},
                  {"capacity",
                   {{"upper", c.upper.value},
                    {"lower", c.lower.value},
                    {"margins", {{"upper", c.upper_margin}, {"lower", c.lower_margin}}},
                    {"separated", c.separated}}},
                  {"certified", relations && hex_ok && c.separated}};
  if (cfg.effective_format() == "json") {
    emit(cfg, j.dump(2));
  } else {
    std::ostringstream os;
    os << "defining relations " << (relations ? "hold" : "VIOLATED") << "\n";
    os << "hexagon/tradeoff/case certificate " << (hex_ok ? "ok" : "FAILED") << "\n";
    os << "capacity: upper " << fixed(c.upper.value) << " < " << c.threshold << " < lower " << fixed(c.lower.value)
       << " (margins " << fixed(c.upper_margin, 6) << ", " << fixed(c.lower_margin, 6) << ") "
       << (c.separated ? "separated" : "NOT separated") << "\n";
    emit(cfg, os.str());
  }
  return j["certified"].get<bool>() ? ok : acceptance_failure;
}

// verify ---------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, double perturb_h, const std::vector<int>& only) {
  AcceptanceOptions opt;
  opt.l_max = cfg.l_max;
  opt.mesh_h = cfg.mesh_h;
  opt.quad_tol = cfg.tol;
  opt.budget = cfg.budget;
  opt.threads = cfg.thread_count();
  opt.seed = cfg.seed;
  opt.perturb_h = perturb_h;
  opt.only = only;
  const bool as_json = cfg.effective_format() == "json";
  const auto results = run_acceptance(opt, [&](const CriterionResult& r) {
    if (!as_json) std::cerr << summary_line(r) << std::endl;
  });

  const CriterionResult* first = nullptr;
  for (const auto& r : results)
    if (!r.passed) {
      first = &r;
      break;
    }
  json checks = json::array();
  for (const auto& r : results) {
    json cs = json::array();
    for (const auto& c : r.checks)
      cs.push_back({{"name", c.name}, {"value", c.value}, {"target", c.target}, {"tol", c.tol}, {"relation", c.relation}, {"passed", c.passed}});
    json e = {{"id", r.id}, {"stage", r.stage}, {"title", r.title}, {"passed", r.passed},
              {"within_time_limit", r.seconds <= r.limit}, {"checks", cs}, {"notes", r.notes}};
    if (r.errored) e["error"] = r.error;
    checks.push_back(e);
  }
  const json cfg_json = cfg.to_json();
  json report = {{"tool_version", version},
                 {"config_digest", fnv1a(cfg_json.dump())},
                 {"config", cfg_json},
                 {"acceptance", checks},
                 {"passed", first == nullptr}};
  if (first) report["first_failing_stage"] = first->stage;
  if (as_json) {
    emit(cfg, report.dump(2));
  } else {
    std::ostringstream os;
    int failed = 0;
    for (const auto& r : results) failed += !r.passed;
    os << results.size() - failed << " of " << results.size() << " acceptance criteria passed";
    if (first) os << "; first failing stage: " << first->stage << " (#" << first->id << " " << first->title << ")";
    emit(cfg, os.str());
  }
  if (!first) return ok;
  return first->errored ? computation_failure : acceptance_failure;
}

// export ---------------------------------------------------------------------

int cmd_export(RunConfig cfg, const std::string& target) {
  const SurfaceParameters p = paper_parameters();
  std::string fmt = cfg.json ? "json" : cfg.format;
  if (target == "surface" || target == "annulus") {
    const ConeSurface s = target == "surface" ? build_extremal_dyck(p) : build_collar_flat(p);
    if (fmt == "text") fmt = "json";
    if (fmt != "json" && fmt != "obj") throw std::invalid_argument("surface export supports json and obj");
    emit(cfg, fmt == "json" ? to_json(s) : to_obj(s));
  } else if (target == "geodesics") {
    const ConeSurface s = build_extremal_dyck(p);
    const auto e = enumerate_closed_geodesics(s, {cfg.l_max, cfg.budget, cfg.thread_count()});
    emit(cfg, geodesics_to_json(e.geodesics));
    if (e.partial) return computation_failure;
  } else if (target == "profile") {
    const CollarProfile prof = hyperbolic_collar(p.ell);
    constexpr int samples = 256;
    std::ostringstream os;
    if (fmt == "json") {
      json arr = json::array();
      for (int i = 0; i < samples; ++i) {
        const double t = p.ell * i / samples;
        arr.push_back({{"t", t}, {"a", prof.a(t)}, {"b", prof.b(t)}});
      }
      os << json{{"ell", p.ell}, {"samples", arr}}.dump(2);
    } else {
      os.precision(17);
      os << "t,a,b\n";
      for (int i = 0; i < samples; ++i) {
        const double t = p.ell * i / samples;
        os << t << "," << prof.a(t) << "," << prof.b(t) << "\n";
      }
    }
    emit(cfg, os.str());
  } else {
    throw std::invalid_argument("unknown export target " + target);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal nonpositively curved Dyck's surface: construction, certificates, capacities"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value config file; flags override it");

  RunConfig cfg;
  app.add_option("--digits", cfg.digits, "Decimal digits for constants")->check(CLI::Range(15, 10000));
  app.add_option("--lmax", cfg.l_max, "Length bound for closed geodesics")->check(CLI::PositiveNumber);
  app.add_option("--mesh-h", cfg.mesh_h, "Mesh size for areas and FEM")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "Emit JSON");
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--seed", cfg.seed, "Seed for randomized property checks");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text", "obj"}));
  app.add_option("--budget", cfg.budget, "Step budget for geodesic searches")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  auto* constants = app.add_subcommand("constants", "Closed-form constants");
  std::string build_target = "extremal";
  int columns = 3;
  auto* build = app.add_subcommand("build", "Build a surface and report its invariants");
  build->add_option("surface", build_target, "extremal | collar | double-cover | klein | torus")
      ->check(CLI::IsMember({"extremal", "collar", "double-cover", "klein", "torus"}));
  build->add_option("--columns", columns, "Band columns (multiple of 3)");
  auto* systole_cmd = app.add_subcommand("systole", "Closed geodesics and the systole");
  auto* hexopt = app.add_subcommand("hexopt", "Hexagon, tradeoff and case certificates");
  std::string cap_what = "certify";
  auto* capacity = app.add_subcommand("capacity", "Capacity bounds");
  capacity->add_option("what", cap_what, "upper | lower | fem | certify")
      ->check(CLI::IsMember({"upper", "lower", "fem", "certify"}));
  auto* certify = app.add_subcommand("certify", "All certificates except the geodesic search");
  double perturb_h = 0.0;
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Full pipeline with acceptance checks");
  verify->add_option("--perturb-h", perturb_h, "Shift h before the build stage (negative control)")->group("");
  verify->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, 12));
  std::string export_target;
  auto* exp = app.add_subcommand("export", "Write surface, annulus, geodesics or profile data");
  exp->add_option("target", export_target, "surface | annulus | geodesics | profile")
      ->required()
      ->check(CLI::IsMember({"surface", "annulus", "geodesics", "profile"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (*constants) return cmd_constants(cfg);
    if (*build) return cmd_build(cfg, build_target, columns);
    if (*systole_cmd) return cmd_systole(cfg);
    if (*hexopt) return cmd_hexopt(cfg);
    if (*capacity) return cmd_capacity(cfg, cap_what);
    if (*certify) return cmd_certify(cfg);
    if (*verify) return cmd_verify(cfg, perturb_h, only);
    if (*exp) return cmd_export(cfg, export_target);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return computation_failure;
  }
  return bad_input;
}
