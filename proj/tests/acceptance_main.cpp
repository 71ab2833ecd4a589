// Acceptance binary: runs all ten criteria, prints one pass/fail line each
// (with measured value, expected value, and tolerance), and exits nonzero on
// any failure.

#include <waylab/acceptance.hpp>

#include <cstdio>

int main() {
  waylab::AcceptanceOptions opt;
  if (const char* env = std::getenv("WAYLAB_CLI")) opt.cli_path = env;
  int failures = 0;
  for (int id : waylab::suite_criteria("all")) {
    waylab::CriterionResult r = waylab::run_criterion(id, opt);
    std::printf("%s\n", waylab::format_criterion_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
