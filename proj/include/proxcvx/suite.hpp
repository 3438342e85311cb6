#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxcvx/io.hpp"

namespace proxcvx {

struct CriterionResult {
  int id = 0;
  std::string name;
  /// Filter tags, e.g. "prox", "certify", "ppa".
  std::vector<std::string> tags;
  /// "reference" when the expected value is a published claim, "derived" when
  /// it comes from an independent computation.
  std::string basis;
  bool pass = false;
  std::string measured;
  std::string expected;
  std::string note;
  double seconds = 0.0;
};

struct SuiteOptions {
  /// Criterion id, tag, or substring of the name; empty runs everything.
  std::string filter;
  /// Points per coordinate for certification x-grids (z-grids use min(grid, 33)).
  std::optional<int> grid;
};

struct CriterionInfo {
  int id;
  std::string name;
  std::vector<std::string> tags;
};

std::vector<CriterionInfo> suite_criteria();
bool matches_filter(const CriterionInfo& c, const std::string& filter);

std::vector<CriterionResult> run_suite(const SuiteOptions& opts = {});

Json to_json(const std::vector<CriterionResult>& results);
std::string suite_table(const std::vector<CriterionResult>& results);

}  // namespace proxcvx
