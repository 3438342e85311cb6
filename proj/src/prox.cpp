#include "proxcvx/prox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "proxcvx/parallel.hpp"

namespace proxcvx {

std::string to_string(Attainment a) {
  switch (a) {
    case Attainment::kVerified: return "verified";
    case Attainment::kUnverified: return "unverified";
    case Attainment::kDivergent: return "divergent";
  }
  return "?";
}

std::string to_string(Multiplicity m) { return m == Multiplicity::kSingle ? "single" : "multiple"; }

void ProxQuery::validate() const {
  if (set.dimension() != f.dimension()) {
    throw InvalidArgument(fmt::format("set has dimension {}, function has {}", set.dimension(), f.dimension()));
  }
  if (z.size() != f.dimension()) throw InvalidArgument("z has the wrong dimension");
  for (double v : z) {
    if (!std::isfinite(v)) throw InvalidArgument("z must be finite");
  }
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (set.intersect(f.domain()).empty()) throw InvalidArgument("set does not meet the function's domain");
}

void SolverConfig::validate() const {
  grid.validate();
  if (!(refine_tol > 0.0) || !(multiplicity_value_tol > 0.0) || !(cluster_radius > 0.0)) {
    throw InvalidArgument("solver tolerances must be positive");
  }
  if (divergence_expansions < 1) throw InvalidArgument("divergence_expansions must be positive");
  if (max_local_minima < 1) throw InvalidArgument("max_local_minima must be positive");
}

const Point& ProxResult::point() const {
  if (argmin.empty()) throw SolverError("prox has no minimizer");
  if (multiplicity == Multiplicity::kMultiple) throw SolverError("prox is multivalued");
  return argmin.front();
}

double objective(const ProxQuery& q, std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return kInf;
  }
  if (!q.set.contains(x)) return kInf;
  const double h = evaluate(q.f, x);
  if (h == kInf || h > q.level_cap) return kInf;
  return h + squared_distance(x, q.z) / (2.0 * q.gamma);
}

namespace {

// One coordinate of a separable prox problem.
struct AxisProblem {
  const Univariate& h;
  Interval set;  // already intersected with dom h
  double z;
  double weight;  // 1 / (2 gamma), zero for plain minimization
  double cap;

  double phi(double x) const {
    if (!set.contains(x)) return kInf;
    const double v = h(x);
    if (v == kInf || v > cap) return kInf;
    const double d = x - z;
    return v + weight * d * d;
  }
};

struct AxisSolution {
  std::vector<double> points;
  double value = kInf;
  Attainment attained = Attainment::kVerified;
  double residual = 0.0;
  long evaluations = 0;
  bool closed_form = false;
};

struct Golden {
  double x;
  double fx;
  double width;
  long evaluations;
};

template <typename F>
Golden golden_section(const F& fn, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  long evals = 0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  evals += 2;
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
    ++evals;
    if (evals > 400) break;
  }
  return fc <= fd ? Golden{c, fc, b - a, evals} : Golden{d, fd, b - a, evals};
}

struct Refined {
  double x;
  double value;
  std::size_t grid_index;
  double residual;
};

// Grid search over the window w followed by golden-section refinement of
// every grid local minimum inside its breakpoint-free neighbouring cells.
struct WindowResult {
  std::vector<Refined> kept;  // near-optimal candidates, sorted by x
  Refined best;
  std::vector<double> xs;
  long evaluations = 0;
};

WindowResult solve_window(const AxisProblem& p, const Interval& w, const SolverConfig& cfg) {
  WindowResult out;
  std::vector<double>& xs = out.xs;
  const int n = cfg.grid.points_per_coordinate;
  if (w.lo == w.hi) {
    xs.push_back(w.lo);
  } else {
    xs.reserve(n + p.h.breakpoints().size() + 2);
    for (int i = 0; i < n; ++i) xs.push_back(i == n - 1 ? w.hi : w.lo + (w.hi - w.lo) * i / (n - 1));
  }
  if (cfg.grid.include_breakpoints) {
    for (const auto& bp : p.h.breakpoints()) {
      if (w.contains(bp.x)) xs.push_back(bp.x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vs(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { vs[i] = p.phi(xs[i]); }, 1024);
  out.evaluations += static_cast<long>(xs.size());

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(vs[i])) continue;
    if (i > 0 && vs[i] > vs[i - 1]) continue;
    if (i + 1 < xs.size() && vs[i] > vs[i + 1]) continue;
    minima.push_back(i);
  }
  if (minima.empty()) throw SolverError("objective is +inf on the whole sampling window");
  std::stable_sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return vs[a] < vs[b]; });
  if (minima.size() > static_cast<std::size_t>(cfg.max_local_minima)) minima.resize(cfg.max_local_minima);

  std::vector<Refined> refined;
  for (std::size_t i : minima) {
    Refined r{xs[i], vs[i], i, 0.0};
    auto refine_cell = [&](double a, double b) {
      if (!(b > a)) return;
      const Piece* piece = p.h.piece_at(0.5 * (a + b));
      if (piece == nullptr) return;
      // the governing piece extended continuously to the closed cell
      auto ext = [&](double x) {
        const double v = piece->formula(x);
        if (v == kInf || v > p.cap) return kInf;
        const double d = x - p.z;
        return v + p.weight * d * d;
      };
      const Golden g = golden_section(ext, a, b, cfg.refine_tol);
      out.evaluations += g.evaluations;
      if (!(g.x > a && g.x < b)) return;
      double x = g.x;
      // value comparisons stall near sqrt(eps); bisect on the slope sign to finish
      auto slope = [&](double t) { return piece->slope(t) + 2.0 * p.weight * (t - p.z); };
      double lo = g.x, hi = g.x;
      for (double step = std::max(g.width, 1e-300); step < 2.0 * (b - a); step *= 2.0) {
        lo = std::max(a, g.x - step);
        hi = std::min(b, g.x + step);
        if (slope(lo) < 0.0 && slope(hi) > 0.0) break;
      }
      if (slope(lo) < 0.0 && slope(hi) > 0.0) {
        for (int k = 0; k < 200 && lo < hi; ++k) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          (slope(mid) < 0.0 ? lo : hi) = mid;
        }
        const double polished = 0.5 * (lo + hi);
        if (ext(polished) <= ext(g.x) + 1e-12 * (1.0 + std::abs(ext(g.x)))) x = polished;
      }
      const double v = p.phi(x);
      ++out.evaluations;
      if (v < r.value) r = {x, v, i, g.width};
    };
    if (i > 0) refine_cell(xs[i - 1], xs[i]);
    if (i + 1 < xs.size()) refine_cell(xs[i], xs[i + 1]);
    refined.push_back(r);
  }

  auto best = std::min_element(refined.begin(), refined.end(),
                               [](const Refined& a, const Refined& b) { return a.value < b.value; });
  out.best = *best;
  const double slack = cfg.multiplicity_value_tol * std::max(1.0, std::abs(best->value));
  for (const auto& r : refined) {
    if (r.value <= best->value + slack) out.kept.push_back(r);
  }
  std::sort(out.kept.begin(), out.kept.end(), [](const Refined& a, const Refined& b) { return a.x < b.x; });
  return out;
}

// Groups candidates closer than the cluster radius; keeps the best of each group.
std::vector<double> cluster(const std::vector<Refined>& kept, double radius) {
  std::vector<double> reps;
  double rep_value = kInf;
  double last_x = -kInf;
  for (const auto& r : kept) {
    if (reps.empty() || r.x - last_x > radius) {
      reps.push_back(r.x);
      rep_value = r.value;
    } else if (r.value < rep_value) {
      reps.back() = r.x;
      rep_value = r.value;
    }
    last_x = r.x;
  }
  return reps;
}

bool touches_non_lsc(const AxisProblem& p, const WindowResult& wr) {
  const std::size_t i = wr.best.grid_index;
  const double lo = wr.xs[i > 0 ? i - 1 : 0];
  const double hi = wr.xs[std::min(i + 1, wr.xs.size() - 1)];
  for (const auto& bp : p.h.breakpoints()) {
    if (bp.continuity == Continuity::kNotLsc && bp.x >= lo && bp.x <= hi) return true;
  }
  return false;
}

AxisSolution solve_axis(const AxisProblem& p, const SolverConfig& cfg) {
  AxisSolution sol;
  const Interval& set = p.set;
  if (set.lo == set.hi) {
    sol.points = {set.lo};
    sol.value = p.phi(set.lo);
    sol.evaluations = 1;
    if (sol.value == kInf) throw SolverError("objective is +inf on the feasible set");
    return sol;
  }
  const double center = set.clamp(p.weight > 0.0 ? p.z : 0.0);
  double radius = cfg.grid.window_radius * (1.0 + std::abs(center));
  int attached_run = 0;
  double previous = kInf;
  for (int expansion = 0;; ++expansion) {
    const Interval w{std::max(set.lo, center - radius), std::min(set.hi, center + radius)};
    WindowResult wr = solve_window(p, w, cfg);
    sol.evaluations += wr.evaluations;
    const double spacing = (w.hi - w.lo) / (cfg.grid.points_per_coordinate - 1);
    const double x = wr.best.x;
    const bool attached = (w.lo > set.lo && x - w.lo <= spacing) || (w.hi < set.hi && w.hi - x <= spacing);
    if (!attached) {
      sol.points = cluster(wr.kept, cfg.cluster_radius);
      sol.value = wr.best.value;
      sol.residual = wr.best.residual;
      sol.attained = touches_non_lsc(p, wr) ? Attainment::kUnverified : Attainment::kVerified;
      return sol;
    }
    if (expansion > 0) attached_run = wr.best.value < previous ? attached_run + 1 : 0;
    previous = wr.best.value;
    if (attached_run >= cfg.divergence_expansions || expansion >= cfg.grid.expansion_cap) {
      sol.points.clear();
      sol.value = wr.best.value;
      sol.attained = Attainment::kDivergent;
      return sol;
    }
    radius *= 2.0;
  }
}

ProxResult combine(const std::vector<AxisSolution>& axes) {
  ProxResult r;
  r.value = 0.0;
  r.argmin = {Point{}};
  for (const auto& a : axes) {
    r.evaluations += a.evaluations;
    r.residual = std::max(r.residual, a.residual);
    r.closed_form = a.closed_form;
    if (a.attained == Attainment::kDivergent) r.attained = Attainment::kDivergent;
    else if (a.attained == Attainment::kUnverified && r.attained == Attainment::kVerified)
      r.attained = Attainment::kUnverified;
    r.value += a.value;
    std::vector<Point> next;
    for (const auto& prefix : r.argmin) {
      for (double x : a.points) {
        Point p = prefix;
        p.push_back(x);
        next.push_back(std::move(p));
      }
    }
    r.argmin = std::move(next);
  }
  if (r.attained == Attainment::kDivergent) r.argmin.clear();
  r.multiplicity = r.argmin.size() > 1 ? Multiplicity::kMultiple : Multiplicity::kSingle;
  return r;
}

std::vector<AxisProblem> axis_problems(const ProxQuery& q, double weight) {
  const Box feasible = q.set.intersect(q.f.domain());
  if (feasible.empty()) throw InvalidArgument("set does not meet the function's domain");
  std::vector<AxisProblem> out;
  for (std::size_t i = 0; i < q.f.dimension(); ++i) {
    // a level cap on a sum does not split; the 2-D case is handled by the caller
    const double cap = q.f.dimension() == 1 ? q.level_cap : kInf;
    out.push_back(AxisProblem{q.f.terms[i], feasible[i], q.z[i], weight, cap});
  }
  return out;
}

ProxResult solve_numeric(const ProxQuery& q, const SolverConfig& cfg, double weight) {
  std::vector<AxisSolution> sols;
  for (const auto& p : axis_problems(q, weight)) sols.push_back(solve_axis(p, cfg));
  return combine(sols);
}

// Exact minimizer of A x^2 + B x + C over an interval.
std::optional<AxisSolution> quadratic_axis(const AxisProblem& p) {
  const auto& pieces = p.h.pieces();
  if (pieces.size() != 1 || !p.h.exceptions().empty() || pieces[0].kind != PieceKind::kPoly) return std::nullopt;
  const auto& c = pieces[0].coeffs;
  if (c.size() > 3 && c[3] != 0.0) return std::nullopt;
  const double c1 = c.size() > 1 ? c[1] : 0.0;
  const double c2 = c.size() > 2 ? c[2] : 0.0;
  const double a = c2 + p.weight;
  const double b = c1 - 2.0 * p.weight * p.z;
  AxisSolution s;
  s.closed_form = true;
  const Interval& I = p.set;
  if (a > 0.0) {
    s.points = {I.clamp(-b / (2.0 * a))};
  } else if ((I.lo == -kInf && (a < 0.0 || b > 0.0)) || (I.hi == kInf && (a < 0.0 || b < 0.0))) {
    s.attained = Attainment::kDivergent;
    s.value = -kInf;
    return s;
  } else if (I.lo == -kInf || I.hi == kInf) {
    // constant objective on an unbounded interval
    return std::nullopt;
  } else {
    const double flo = p.phi(I.lo);
    const double fhi = p.phi(I.hi);
    const double tol = 1e-12 * std::max(1.0, std::abs(flo));
    if (std::abs(flo - fhi) <= tol && I.lo != I.hi) s.points = {I.lo, I.hi};
    else s.points = {flo < fhi ? I.lo : I.hi};
  }
  s.value = p.phi(s.points.front());
  s.evaluations = static_cast<long>(s.points.size());
  return s;
}

// c |x| with c > 0: soft threshold, then projection (valid since the objective is convex).
std::optional<AxisSolution> abs_axis(const AxisProblem& p) {
  const auto& pieces = p.h.pieces();
  if (pieces.size() != 2 || !p.h.exceptions().empty()) return std::nullopt;
  const Piece& l = pieces[0];
  const Piece& r = pieces[1];
  auto coeff = [](const Piece& pc, std::size_t i) { return i < pc.coeffs.size() ? pc.coeffs[i] : 0.0; };
  const double slope = coeff(r, 1);
  if (l.kind != PieceKind::kPoly || r.kind != PieceKind::kPoly || l.hi != 0.0 || coeff(l, 1) != -slope ||
      !(slope > 0.0) || coeff(l, 0) != 0.0 || coeff(r, 0) != 0.0 || coeff(l, 2) != 0.0 || coeff(r, 2) != 0.0 ||
      coeff(l, 3) != 0.0 || coeff(r, 3) != 0.0) {
    return std::nullopt;
  }
  AxisSolution s;
  s.closed_form = true;
  double x = 0.0;
  if (p.weight > 0.0) {
    const double t = slope / (2.0 * p.weight);
    x = p.z > t ? p.z - t : (p.z < -t ? p.z + t : 0.0);
  }
  s.points = {p.set.clamp(x)};
  s.value = p.phi(s.points.front());
  s.evaluations = 1;
  return s;
}

std::optional<ProxResult> closed_form_with_weight(const ProxQuery& q, double weight) {
  if (!q.f.closed_form_prox || q.level_cap < kInf) return std::nullopt;
  const std::string& name = *q.f.closed_form_prox;
  std::vector<AxisSolution> sols;
  for (const auto& p : axis_problems(q, weight)) {
    std::optional<AxisSolution> s;
    if (name == "quadratic") s = quadratic_axis(p);
    else if (name == "abs") s = abs_axis(p);
    if (!s) return std::nullopt;
    sols.push_back(std::move(*s));
  }
  ProxResult r = combine(sols);
  if (r.attained == Attainment::kDivergent) r.value = -kInf;
  return r;
}

ProxResult solve(const ProxQuery& q, const SolverConfig& cfg, double weight) {
  q.validate();
  cfg.validate();
  if (cfg.use_closed_form) {
    if (auto exact = closed_form_with_weight(q, weight)) {
      if (exact->attained == Attainment::kDivergent) return *exact;
      // one coarse numeric solve guards against a formula applied out of its range
      SolverConfig coarse = cfg;
      coarse.grid.points_per_coordinate = 257;
      const ProxResult check = solve_numeric(q, coarse, weight);
      exact->evaluations += check.evaluations;
      const double tol = 1e-9 * std::max(1.0, std::abs(exact->value));
      if (check.attained != Attainment::kDivergent && check.value < exact->value - tol) {
        return solve_numeric(q, cfg, weight);
      }
      exact->residual = check.attained == Attainment::kDivergent ? 0.0 : std::abs(check.value - exact->value);
      return *exact;
    }
  }
  ProxResult r = solve_numeric(q, cfg, weight);
  if (q.f.dimension() > 1 && q.level_cap < kInf && r.attained != Attainment::kDivergent) {
    // The box minimizer lies in the sublevel set whenever the cap is at least
    // f(z); a minimizer over a superset that is feasible is a minimizer over
    // the subset.
    for (const auto& x : r.argmin) {
      if (evaluate(q.f, x) > q.level_cap + 1e-12 * (1.0 + std::abs(q.level_cap))) {
        throw SolverError("sublevel-restricted prox in two dimensions requires a feasible box minimizer");
      }
    }
  }
  return r;
}

}  // namespace

ProxResult prox(const ProxQuery& q, const SolverConfig& cfg) { return solve(q, cfg, 1.0 / (2.0 * q.gamma)); }

std::optional<ProxResult> closed_form_prox(const ProxQuery& q) {
  q.validate();
  return closed_form_with_weight(q, 1.0 / (2.0 * q.gamma));
}

double moreau(const ProxQuery& q, const SolverConfig& cfg) {
  const ProxResult r = prox(q, cfg);
  if (r.attained == Attainment::kDivergent) throw SolverError("Moreau envelope is -inf: prox diverges");
  return r.value;
}

Point moreau_gradient(const FunctionSpec& f, const Box& set, std::span<const double> z, double alpha,
                      const SolverConfig& cfg) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const ProxQuery q{f, set, Point(z.begin(), z.end()), 1.0 / alpha};
  const ProxResult r = prox(q, cfg);
  if (r.attained == Attainment::kDivergent) throw SolverError("prox diverges; envelope not differentiable");
  if (r.multiplicity == Multiplicity::kMultiple) {
    throw SolverError(fmt::format("prox is multivalued at z = ({})", format_point(z)));
  }
  Point g(z.size());
  const Point& x = r.point();
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = alpha * (z[i] - x[i]);
  return g;
}

Pr2Report check_pr2(const ProxQuery& q, std::span<const double> xbar, std::span<const Point> xs, double tol) {
  q.validate();
  Pr2Report rep;
  const double hbar = evaluate(q.f, xbar);
  Point shifted(xbar.size());
  for (const auto& x : xs) {
    if (!q.set.contains(x)) continue;
    const double hx = evaluate(q.f, x);
    if (hx == kInf) continue;
    ++rep.samples;
    for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = xbar[i] + x[i] - 2.0 * q.z[i];
    const double rhs = dot(shifted, subtract(x, xbar)) / (2.0 * q.gamma);
    const double slack = rhs - (hbar - hx);
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      if (slack < -tol) rep.violator = x;
    }
  }
  rep.holds = rep.worst_slack >= -tol;
  if (rep.holds) rep.violator.reset();
  return rep;
}

ProxResult minimize(const FunctionSpec& f, const Box& set, const SolverConfig& cfg) {
  const ProxQuery q{f, set, Point(f.dimension(), 0.0)};
  return solve(q, cfg, 0.0);
}

}  // namespace proxcvx
