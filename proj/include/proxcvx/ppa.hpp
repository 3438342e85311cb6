#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxcvx/catalog.hpp"
#include "proxcvx/prox.hpp"

namespace proxcvx {

enum class StopReason { kStepTol, kValueTol, kMaxIters, kProxFailure };
std::string to_string(StopReason r);

enum class StepMode {
  /// x+ = prox over K
  kStandard,
  /// x+ = prox over K ∩ {h <= h(x)}
  kSublevel,
};

struct PPAConfig {
  Point x0;
  int max_iters = 200;
  double step_tol = 1e-10;
  double value_tol = 1e-12;
  std::optional<Point> known_min;
  double gamma = 1.0;
  StepMode mode = StepMode::kStandard;

  void validate() const;
};

/// iterates[0] is x0; entry k of every column belongs to iterate k + 1 when
/// printed (traces are numbered from 1).
struct PPATrace {
  std::vector<Point> iterates;
  std::vector<double> values;
  /// step_norms[0] = 0, step_norms[k] = ||x^k - x^{k-1}||
  std::vector<double> step_norms;
  /// filled only when PPAConfig::known_min is set
  std::vector<double> fejer_distances;
  StopReason stop_reason = StopReason::kMaxIters;
  std::string failure;
};

/// Throws InvalidArgument when x0 lies outside set ∩ dom.
PPATrace run(const FunctionSpec& f, const Box& set, const PPAConfig& cfg, const SolverConfig& solver = {});

struct MonotoneReport {
  bool pass = true;
  /// first k (0-based) with values[k] > values[k-1] + tol
  std::optional<std::size_t> first_violation;
  std::size_t pairs = 0;
};

MonotoneReport check_monotone(const PPATrace& trace, double tol = 1e-12);

struct FejerReport {
  bool monotone = true;
  std::optional<std::size_t> first_violation;
  std::vector<double> distances;
  /// k (h(x^k) - h(xbar)), k counted from 1
  std::vector<double> rate;
  /// max of the rate sequence over the second half does not exceed the max
  /// over the first half
  bool rate_bounded = true;
};

/// Throws InvalidArgument when xbar lies outside set ∩ dom.
FejerReport check_fejer(const FunctionSpec& f, const Box& set, const PPATrace& trace, std::span<const double> xbar,
                        double tol = 1e-12);

}  // namespace proxcvx
