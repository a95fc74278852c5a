// Runs the acceptance criteria and prints one line per criterion.

#include <cstdio>

#include "conewalk/acceptance.hpp"

int main() {
  conewalk::AcceptanceOptions options;
  int failed = 0;
  conewalk::run_acceptance(options, [&](const conewalk::CriterionResult& r) {
    std::printf("%s\n", conewalk::format_result_line(r).c_str());
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  });
  std::printf("%d of %d criteria passed\n", conewalk::kAcceptanceCriteria - failed, conewalk::kAcceptanceCriteria);
  return failed == 0 ? 0 : 1;
}
