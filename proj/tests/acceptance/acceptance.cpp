#include <cstdio>

#include "bredonkit/cli.hpp"

int main() {
  using namespace bredonkit::cli;
  int failed = 0;
  std::size_t criterion = 0;
  for (const auto& s : suites()) {
    ++criterion;
    SuiteResult r = run_suite(s.name);
    const bool in_time = r.seconds < s.limit;
    const bool pass = r.ok && in_time;
    std::printf("criterion %zu %s: %s (%.2f s, limit %.0f s)\n", criterion, s.name.c_str(), pass ? "PASS" : "FAIL",
                r.seconds, s.limit);
    if (!pass) {
      ++failed;
      for (const auto& n : r.notes) std::printf("  %s\n", n.c_str());
      if (!in_time) std::printf("  over the time limit\n");
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criterion);
  return failed == 0 ? 0 : 1;
}
