#include "proxcvx/ppa.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace proxcvx {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kStepTol: return "step_tol";
    case StopReason::kValueTol: return "value_tol";
    case StopReason::kMaxIters: return "max_iters";
    case StopReason::kProxFailure: return "prox_failure";
  }
  return "?";
}

void PPAConfig::validate() const {
  if (x0.empty()) throw InvalidArgument("x0 is required");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (!(step_tol > 0.0)) throw InvalidArgument("step_tol must be positive");
  if (!(value_tol > 0.0)) throw InvalidArgument("value_tol must be positive");
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (known_min && known_min->size() != x0.size()) throw InvalidArgument("known_min has the wrong dimension");
}

PPATrace run(const FunctionSpec& f, const Box& set, const PPAConfig& cfg, const SolverConfig& solver) {
  cfg.validate();
  if (cfg.x0.size() != f.dimension() || set.dimension() != f.dimension()) {
    throw InvalidArgument("x0, set and function dimensions differ");
  }
  if (!set.contains(cfg.x0) || evaluate(f, cfg.x0) == kInf) {
    throw InvalidArgument(fmt::format("x0 = ({}) lies outside set ∩ dom", format_point(cfg.x0)));
  }

  PPATrace t;
  auto push = [&](Point x, double step) {
    t.values.push_back(evaluate(f, x));
    t.step_norms.push_back(step);
    if (cfg.known_min) t.fejer_distances.push_back(distance(x, *cfg.known_min));
    t.iterates.push_back(std::move(x));
  };
  push(cfg.x0, 0.0);

  for (int k = 0; k < cfg.max_iters; ++k) {
    const Point& x = t.iterates.back();
    ProxQuery q{f, set, x, cfg.gamma};
    if (cfg.mode == StepMode::kSublevel) q.level_cap = t.values.back();
    ProxResult r;
    try {
      r = prox(q, solver);
    } catch (const SolverError& e) {
      t.stop_reason = StopReason::kProxFailure;
      t.failure = e.what();
      return t;
    }
    if (r.attained == Attainment::kDivergent || r.multiplicity == Multiplicity::kMultiple) {
      t.stop_reason = StopReason::kProxFailure;
      t.failure = fmt::format("prox is {} at x = ({})",
                              r.attained == Attainment::kDivergent ? "divergent" : "multivalued", format_point(x));
      return t;
    }
    const double before = t.values.back();
    const double step = distance(r.point(), x);
    push(r.point(), step);
    if (step <= cfg.step_tol) {
      t.stop_reason = StopReason::kStepTol;
      return t;
    }
    if (std::abs(before - t.values.back()) <= cfg.value_tol) {
      t.stop_reason = StopReason::kValueTol;
      return t;
    }
  }
  t.stop_reason = StopReason::kMaxIters;
  return t;
}

MonotoneReport check_monotone(const PPATrace& trace, double tol) {
  MonotoneReport rep;
  for (std::size_t k = 1; k < trace.values.size(); ++k) {
    ++rep.pairs;
    if (trace.values[k] > trace.values[k - 1] + tol) {
      rep.pass = false;
      rep.first_violation = k;
      break;
    }
  }
  return rep;
}

FejerReport check_fejer(const FunctionSpec& f, const Box& set, const PPATrace& trace, std::span<const double> xbar,
                        double tol) {
  if (xbar.size() != f.dimension() || !set.contains(xbar)) {
    throw InvalidArgument(fmt::format("xbar = ({}) lies outside the set", format_point(xbar)));
  }
  const double hstar = evaluate(f, xbar);
  if (hstar == kInf) throw InvalidArgument(fmt::format("xbar = ({}) lies outside the domain", format_point(xbar)));

  FejerReport rep;
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    rep.distances.push_back(distance(trace.iterates[k], xbar));
    rep.rate.push_back(static_cast<double>(k + 1) * (trace.values[k] - hstar));
    if (k > 0 && rep.monotone && rep.distances[k] > rep.distances[k - 1] + tol) {
      rep.monotone = false;
      rep.first_violation = k;
    }
  }
  if (rep.rate.size() >= 2) {
    const std::size_t half = rep.rate.size() / 2;
    const double early = *std::max_element(rep.rate.begin(), rep.rate.begin() + half);
    const double late = *std::max_element(rep.rate.begin() + half, rep.rate.end());
    rep.rate_bounded = late <= early + tol * (1.0 + std::abs(early));
  }
  return rep;
}

}  // namespace proxcvx
