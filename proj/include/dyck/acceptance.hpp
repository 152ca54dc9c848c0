#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dyck {

struct AcceptanceOptions {
  double l_max = 1.2;
  double mesh_h = 0.01;       // capacity mesh cross-check; Richardson uses mesh_h / 2
  double quad_tol = 1e-8;
  long budget = 20'000'000;
  int threads = 0;            // 0: hardware concurrency
  unsigned seed = 20260101;   // randomized property surfaces
  double perturb_h = 0.0;     // test hook: shifts h before the build stage
  std::vector<int> only;      // criterion ids to run; empty runs all
};

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;
  std::string relation;  // "abs", ">=", "<="
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string stage;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;
  double limit = 0.0;  // runtime limit in seconds
  bool errored = false;
  std::string error;
  bool passed = false;
};

/// Runs acceptance criteria 1-12 in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One line: "#3 FAIL systole: ...".
std::string summary_line(const CriterionResult& r);

/// Stage of a criterion id: constants, area, systole, build, hexopt, capacity, properties.
std::string stage_of(int id);

}  // namespace dyck
