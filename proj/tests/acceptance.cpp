// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdio>

#include <fmt/format.h>

#include "proxcvx/suite.hpp"

int main() {
  const auto results = proxcvx::run_suite();
  int failed = 0;
  for (const auto& r : results) {
    fmt::print("[{}] criterion {:>2}: {} | measured {} | expected {}\n", r.pass ? "PASS" : "FAIL", r.id, r.name,
               r.measured, r.expected);
    if (!r.pass) ++failed;
  }
  fmt::print("{}/{} criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
