#include <cstdio>

#include "cuspline/selftest.hpp"

int main() {
  int failures = 0;
  for (int id = 1; id <= cuspline::kCriteria; ++id) {
    cuspline::CriterionResult r = cuspline::run_criterion(id);
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s) %s\n", r.pass() ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.limit, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
