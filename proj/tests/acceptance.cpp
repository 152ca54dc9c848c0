#include "dyck/acceptance.hpp"

#include <cstdio>

int main() {
  dyck::AcceptanceOptions opt;
  int failed = 0;
  dyck::run_acceptance(opt, [&](const dyck::CriterionResult& r) {
    std::printf("%s\n", dyck::summary_line(r).c_str());
    for (const auto& n : r.notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
