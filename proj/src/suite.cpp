#include "proxcvx/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "proxcvx/certify.hpp"
#include "proxcvx/diagnostics.hpp"
#include "proxcvx/ppa.hpp"
#include "proxcvx/subdiff.hpp"

namespace proxcvx {

namespace {

struct Grids {
  std::vector<Point> z;
  std::vector<Point> x;
};

Grids certify_grids(const FunctionSpec& f, const Box& set, const SuiteOptions& opts) {
  if (!opts.grid) return {default_zgrid(f, set), default_xgrid(f, set)};
  GridSpec g;
  g.points_per_coordinate = std::min(*opts.grid, 33);
  g.validate();
  Grids out{sample_points(f, set, g), {}};
  g.points_per_coordinate = *opts.grid;
  out.x = sample_points(f, set, g);
  return out;
}

std::string interval_text(const AlphaCertificate& c) {
  return fmt::format("{} {}{}, {}{}", to_string(c.status), c.lower_closed ? '[' : '(', format_number(c.lower),
                     format_number(c.upper), c.upper_closed ? ']' : ')');
}

SolverConfig numeric_only() {
  SolverConfig cfg;
  cfg.use_closed_form = false;
  return cfg;
}

Box quad2d_set() { return Box({Interval{0.0, 2.0}, Interval{-kInf, kInf}}); }

/// Global minimizer over set; used as the Fejér anchor.
Point anchor(const FunctionSpec& f, const Box& set) {
  const ProxResult r = minimize(f, set);
  if (r.argmin.empty()) throw SolverError(fmt::format("{} has no minimizer on the set", f.id));
  return r.argmin.front();
}

CriterionResult c1(const SuiteOptions&) {
  CriterionResult r;
  const FunctionSpec f = builtin("negquad");
  const Box set = Box::line(0.0, 1.0);
  GridSpec g;
  g.points_per_coordinate = 33;
  double worst_numeric = 0.0;
  double worst_closed = 0.0;
  bool single = true;
  std::size_t n = 0;
  for (const auto& z : sample_points(f, set, g)) {
    ++n;
    const ProxResult num = prox(ProxQuery{f, set, z}, numeric_only());
    const auto cf = closed_form_prox(ProxQuery{f, set, z});
    single = single && num.single() && cf && cf->single();
    if (!single) break;
    worst_numeric = std::max(worst_numeric, std::abs(num.point()[0] - 1.0));
    worst_closed = std::max(worst_closed, std::abs(cf->point()[0] - 1.0));
  }
  r.pass = single && n == 33 && worst_numeric <= 1e-6 && worst_closed == 0.0;
  r.measured = fmt::format("{} z points, single-valued: {}, max |numeric - 1| = {:.3g}, max |closed - 1| = {:.3g}", n,
                           single, worst_numeric, worst_closed);
  r.expected = "prox = {1} at every z; numeric within 1e-6, closed form exact";
  return r;
}

CriterionResult c2(const SuiteOptions&) {
  CriterionResult r;
  const FunctionSpec f = scaled(builtin("negquad"), 0.1);
  const Box set = Box::line(0.0, 1.0);
  const ProxResult num = prox(ProxQuery{f, set, {0.0}}, numeric_only());
  const auto cf = closed_form_prox(ProxQuery{f, set, {0.0}});
  const double xn = num.single() ? num.point()[0] : std::nan("");
  const double xc = cf && cf->single() ? cf->point()[0] : std::nan("");
  r.pass = std::abs(xn - 0.125) <= 1e-8 && std::abs(xc - 0.125) <= 1e-8;
  r.measured = fmt::format("numeric {}, closed form {}", format_number(xn), format_number(xc));
  r.expected = "1/8 within 1e-8";
  return r;
}

CriterionResult c3(const SuiteOptions& opts) {
  CriterionResult r;
  const FunctionSpec f = builtin("negquad");
  const Box set = Box::line(0.0, 1.0);
  const Grids g = certify_grids(f, set, opts);
  const AlphaCertificate c = alpha_interval(f, set, g.z, g.x);
  bool binding = false;
  if (c.upper_binding) {
    binding = c.upper_binding->z[0] == 0.0 && c.upper_binding->x[0] == 0.0;
  }
  r.pass = c.status == CertificateStatus::kCertified && std::abs(c.upper - 2.0) <= 1e-6 && binding;
  r.measured = interval_text(c);
  if (c.upper_binding) {
    r.measured += fmt::format("; binding z = {}, x = {}, lhs = {}, ip = {}", format_point(c.upper_binding->z),
                              format_point(c.upper_binding->x), format_number(c.upper_binding->lhs),
                              format_number(c.upper_binding->ip));
  }
  r.expected = "upper endpoint 2 +- 1e-6, binding pair z = 0, x = 0 (lhs = -2, ip = -1)";
  r.note = "published claim: every alpha > 0; superseded by the derived bound alpha <= 2";
  return r;
}

CriterionResult c4(const SuiteOptions& opts) {
  CriterionResult r;
  const FunctionSpec f = builtin("logaffine");
  const Box set = Box::line(1.0, 2.0);
  const Grids g = certify_grids(f, set, opts);
  const AlphaCertificate c = alpha_interval(f, set, g.z, g.x);
  const bool a1 = check_alpha(f, set, 1.0, g.z, g.x).pass;
  const bool a49 = check_alpha(f, set, 4.9, g.z, g.x).pass;
  const double expected = 5.0 + std::log(21.0 / 11.0);
  r.pass = c.status == CertificateStatus::kCertified && c.contains(1.0) && c.contains(4.9) && a1 && a49 &&
           std::abs(c.upper - expected) <= 1e-3;
  r.measured = fmt::format("{}; alpha = 1 {}, alpha = 4.9 {}", interval_text(c), a1 ? "pass" : "fail",
                           a49 ? "pass" : "fail");
  r.expected = fmt::format("alpha = 1 and 4.9 feasible; upper endpoint {:.6f} +- 1e-3", expected);
  return r;
}

CriterionResult c5(const SuiteOptions&) {
  CriterionResult r;
  r.pass = true;
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    const FunctionSpec f = builtin("staircase", {{"n", static_cast<double>(n)}});
    const Box set = Box::line(1.0, n);
    GridSpec g;
    g.points_per_coordinate = 17;
    for (const auto& z : sample_points(f, set, g)) {
      const ProxResult p = prox(ProxQuery{f, set, z});
      if (!p.single() || p.attained != Attainment::kVerified) {
        r.pass = false;
        r.measured = fmt::format("n = {}, z = {}: {} / {}", n, format_point(z), to_string(p.attained),
                                 to_string(p.multiplicity));
        break;
      }
      worst = std::max(worst, std::abs(p.point()[0] - n));
    }
  }
  if (r.pass) {
    r.pass = worst <= 1e-8;
    r.measured = fmt::format("max |prox - n| = {:.3g} over n = 3, 4, 5 and 17 z points each", worst);
  }
  r.expected = "prox = {n} within 1e-8";
  return r;
}

CriterionResult c6(const SuiteOptions&) {
  CriterionResult r;
  const FunctionSpec f = builtin("quad2d");
  const Box set = quad2d_set();
  double worst_x2 = 0.0;
  bool branches = true;
  std::string bad;
  for (double z1 : {-5.0, -3.0, -2.5, -2.0, -1.5, 0.0, 1.0, 2.0}) {
    for (double z2 : {-6.0, 0.0, 1.0, 9.0}) {
      const ProxResult p = prox(ProxQuery{f, set, {z1, z2}}, numeric_only());
      std::vector<double> first;
      for (const auto& x : p.argmin) {
        first.push_back(x[0]);
        worst_x2 = std::max(worst_x2, std::abs(x[1] - z2 / 3.0));
      }
      std::vector<double> want;
      if (z1 <= -2.0) want.push_back(0.0);
      if (z1 >= -2.0) want.push_back(2.0);
      bool ok = first.size() == want.size();
      for (std::size_t i = 0; ok && i < want.size(); ++i) ok = std::abs(first[i] - want[i]) <= 1e-8;
      if (!ok && branches) {
        branches = false;
        bad = fmt::format("z = ({}, {})", z1, z2);
      }
    }
  }
  PPAConfig pc;
  pc.x0 = {0.5, 9.0};
  const PPATrace t = run(f, set, pc);
  double worst_iter = 0.0;
  for (std::size_t k = 1; k < t.iterates.size(); ++k) {
    const double want2 = 9.0 / std::pow(3.0, static_cast<double>(k));
    worst_iter = std::max({worst_iter, std::abs(t.iterates[k][0] - 2.0), std::abs(t.iterates[k][1] - want2)});
  }
  const double limit = t.iterates.empty() ? kInf : distance(t.iterates.back(), Point{2.0, 0.0});
  r.pass = branches && worst_x2 <= 1e-8 && t.stop_reason != StopReason::kProxFailure && t.iterates.size() > 2 &&
           worst_iter <= 1e-9 && limit <= 1e-6;
  r.measured = fmt::format(
      "branches {}, max |x2 - z2/3| = {:.3g}; {} iterates, max iterate error {:.3g}, |x_last - (2,0)| = {:.3g}",
      branches ? "match" : "differ at " + bad, worst_x2, t.iterates.size(), worst_iter, limit);
  r.expected = "x1 = 0 for z1 <= -2, 2 for z1 >= -2, x2 = z2/3; iterates (2, 9/3^(k-1)) for k >= 2 -> (2, 0)";
  return r;
}

CriterionResult c7(const SuiteOptions& opts) {
  CriterionResult r;
  r.pass = true;
  std::vector<std::string> parts;
  for (const char* name : {"halfsquare", "abs"}) {
    const FunctionSpec f = builtin(name);
    const Box set = Box::line(-1.0, 1.0);
    const Grids g = certify_grids(f, set, opts);
    const AlphaCertificate c = alpha_interval(f, set, g.z, g.x);
    const bool ok = c.status == CertificateStatus::kCertified && c.contains(1.0) && c.upper == kInf;
    r.pass = r.pass && ok;
    std::string part = fmt::format("{}: {}", name, interval_text(c));
    if (c.upper_binding) {
      part += fmt::format(" (upper bound from z = {}, x = {})", format_point(c.upper_binding->z),
                          format_point(c.upper_binding->x));
    }
    parts.push_back(part);
  }
  r.measured = fmt::format("{}", fmt::join(parts, "; "));
  r.expected = "certified, 1 in the interval, upper endpoint +inf";
  r.note = "the sampled constraints with <xbar - z, x - xbar> < 0 cap alpha near 1 for both functions";
  return r;
}

CriterionResult c8(const SuiteOptions&) {
  CriterionResult r;
  r.pass = true;
  std::vector<std::string> parts;
  std::mt19937_64 rng(2024);
  struct Case {
    FunctionSpec f;
    Box set;
  };
  std::vector<Case> cases;
  cases.push_back({builtin("negquad"), Box::line(0.0, 1.0)});
  cases.push_back({builtin("logaffine"), Box::line(1.0, 2.0)});
  cases.push_back({builtin("staircase", {{"n", 3}}), Box::line(1.0, 3.0)});
  cases.push_back({builtin("quad2d"), quad2d_set()});
  for (const auto& c : cases) {
    std::vector<std::uniform_real_distribution<double>> axes;
    for (const auto& a : c.set.axes()) {
      const Interval w = sampling_window(a, 10.0);
      axes.emplace_back(w.lo, w.hi);
    }
    std::vector<std::pair<Point, Point>> pairs(1000);
    for (auto& [x, y] : pairs) {
      for (auto& d : axes) x.push_back(d(rng));
      for (auto& d : axes) y.push_back(d(rng));
    }
    const FirmReport rep = check_firm_nonexpansive(c.f, c.set, pairs);
    r.pass = r.pass && rep.fnem_holds;
    parts.push_back(fmt::format("{}: worst slack {:.3g}", c.f.id, rep.worst_fnem_slack));
  }
  r.measured = fmt::format("{}", fmt::join(parts, "; "));
  r.expected = "||Tx - Ty||^2 <= <x - y, Tx - Ty> within 1e-9 on 1000 pairs each";
  return r;
}

CriterionResult c9(const SuiteOptions&) {
  CriterionResult r;
  r.pass = true;
  std::vector<std::string> parts;
  struct Case {
    std::string name;
    Box set;
    double alpha;
  };
  const std::vector<Case> cases{{"negquad", Box::line(0.0, 1.0), 1.0},
                                {"negquad", Box::line(0.0, 1.0), 2.0},
                                {"logaffine", Box::line(1.0, 2.0), 1.0}};
  for (const auto& c : cases) {
    const FunctionSpec f = builtin(c.name);
    const double lo = c.set[0].lo, hi = c.set[0].hi;
    std::vector<double> zs, grads;
    double worst_rel = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double z = lo + (hi - lo) * i / 21.0;
      const double step = 1e-5 * (1.0 + std::abs(z));
      const double g = moreau_gradient(f, c.set, Point{z}, c.alpha)[0];
      const double up = moreau(ProxQuery{f, c.set, {z + step}, 1.0 / c.alpha});
      const double dn = moreau(ProxQuery{f, c.set, {z - step}, 1.0 / c.alpha});
      const double fd = (up - dn) / (2.0 * step);
      worst_rel = std::max(worst_rel, std::abs(g - fd) / std::max(std::abs(g), 1e-12));
      zs.push_back(z);
      grads.push_back(g);
    }
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      for (std::size_t j = i + 1; j < zs.size(); ++j) {
        worst_ratio = std::max(worst_ratio, std::abs(grads[i] - grads[j]) / std::abs(zs[i] - zs[j]));
      }
    }
    const bool ok = worst_rel <= 1e-5 && worst_ratio <= c.alpha * (1.0 + 1e-8);
    r.pass = r.pass && ok;
    parts.push_back(fmt::format("{} alpha = {}: rel err {:.3g}, Lipschitz ratio {:.10g}", c.name, c.alpha, worst_rel,
                                worst_ratio));
  }
  r.measured = fmt::format("{}", fmt::join(parts, "; "));
  r.expected = "relative error <= 1e-5 at 20 interior z; Lipschitz ratio <= alpha (1 + 1e-8)";
  return r;
}

CriterionResult c10(const SuiteOptions& opts) {
  CriterionResult r;
  std::vector<std::string> parts;

  const FunctionSpec nc = builtin("negcubic");
  bool divergent = true;
  for (double z : {-1.0, 0.0, 1.0}) {
    divergent = divergent && prox(ProxQuery{nc, Box::whole(1), {z}}).attained == Attainment::kDivergent;
  }
  parts.push_back(fmt::format("negcubic prox divergent: {}", divergent));

  const FunctionSpec spike = builtin("indicator_spike");
  const Box sset = Box::line(-1.0, 1.0);
  const Grids g = certify_grids(spike, sset, opts);
  const AlphaCertificate c = alpha_interval(spike, sset, g.z, g.x);
  const bool uncertified = c.status != CertificateStatus::kCertified;
  parts.push_back(fmt::format("indicator_spike: {} ({})", to_string(c.status), c.diagnostic));

  const FunctionSpec cs = builtin("cubic_shifted", {{"n", 3}});
  const Box cset = Box::line(-3.0, 10.0);
  const std::vector<Triple> triples = default_triples(cs, cset);
  const ProbeReport s01 = quasiconvexity_probe(QcxKind::kStrong, cs, cset, triples, 0.1);
  const ProbeReport s1 = quasiconvexity_probe(QcxKind::kStrong, cs, cset, triples, 1.0);
  const ProbeReport q = quasiconvexity_probe(QcxKind::kQuasiconvex, cs, cset, triples);
  const bool cubic = !s01.consistent && !s1.consistent && q.consistent;
  parts.push_back(fmt::format("cubic_shifted(3): strong(0.1) {}, strong(1) {}, quasiconvex {}",
                              s01.consistent ? "consistent" : "violated", s1.consistent ? "consistent" : "violated",
                              q.consistent ? "consistent" : "violated"));

  r.pass = divergent && uncertified && cubic;
  r.measured = fmt::format("{}", fmt::join(parts, "; "));
  r.expected = "negcubic divergent; indicator_spike not certified; cubic_shifted(3) violates strong(0.1), strong(1), "
               "passes quasiconvexity";
  return r;
}

CriterionResult c11(const SuiteOptions& opts) {
  CriterionResult r;
  r.pass = true;
  struct Case {
    FunctionSpec f;
    Box set;
    std::vector<Point> starts;
  };
  std::vector<Case> cases;
  cases.push_back({builtin("negquad"), Box::line(0.0, 1.0), {{0.0}, {0.5}}});
  cases.push_back({builtin("logaffine"), Box::line(1.0, 2.0), {{2.0}, {1.5}}});
  cases.push_back({builtin("staircase", {{"n", 3}}), Box::line(1.0, 3.0), {{1.0}, {2.5}}});
  cases.push_back({builtin("halfsquare"), Box::line(-1.0, 1.0), {{1.0}, {-0.7}}});
  cases.push_back({builtin("abs"), Box::line(-1.0, 1.0), {{1.0}, {-0.3}}});
  cases.push_back({builtin("quad2d"), quad2d_set(), {{0.5, 9.0}, {1.0, -4.0}}});
  std::vector<std::string> parts;
  std::size_t used = 0;
  for (const auto& c : cases) {
    const Grids g = certify_grids(c.f, c.set, opts);
    const AlphaCertificate cert = alpha_interval(c.f, c.set, g.z, g.x);
    if (cert.status != CertificateStatus::kCertified) {
      parts.push_back(fmt::format("{}: skipped ({})", c.f.id, to_string(cert.status)));
      continue;
    }
    ++used;
    const Point xbar = anchor(c.f, c.set);
    for (const auto& x0 : c.starts) {
      PPAConfig pc;
      pc.x0 = x0;
      pc.known_min = xbar;
      const PPATrace t = run(c.f, c.set, pc);
      const MonotoneReport m = check_monotone(t);
      const FejerReport fj = check_fejer(c.f, c.set, t, xbar);
      const double gap = t.values.back() - evaluate(c.f, xbar);
      const bool ok = t.stop_reason != StopReason::kProxFailure && m.pass && fj.monotone && fj.rate_bounded &&
                      gap <= 1e-6;
      r.pass = r.pass && ok;
      if (!ok) {
        parts.push_back(fmt::format("{} from ({}): stop {}, monotone {}, fejer {}, rate bounded {}, gap {:.3g}",
                                    c.f.id, format_point(x0), to_string(t.stop_reason), m.pass, fj.monotone,
                                    fj.rate_bounded, gap));
      }
    }
    if (r.pass) parts.push_back(fmt::format("{}: ok", c.f.id));
  }
  r.pass = r.pass && used > 0;
  r.measured = fmt::format("{}", fmt::join(parts, "; "));
  r.expected = "values and distances to the minimizer non-increasing (1e-12); k (h(x^k) - h*) bounded";
  return r;
}

CriterionResult c12(const SuiteOptions& opts) {
  CriterionResult r;
  const FunctionSpec f = builtin("negquad");
  const Box set = Box::line(0.0, 1.0);
  const Grids g = certify_grids(f, set, opts);
  const std::vector<Triple> triples = default_triples(f, set);
  const StronglyGReport sg = strongly_G_check(f, set, g.z, g.x, triples, {}, 1.0);
  const AlphaCheck half = check_alpha(f, set, 0.5, g.z, g.x);
  r.pass = sg.pass && half.pass;
  r.measured = fmt::format("strong(1) {}, membership {} over {} z, check_alpha(1/2) {} (worst slack {:.3g})",
                           sg.strong_quasiconvex ? "consistent" : "violated", sg.membership ? "pass" : "fail",
                           sg.z_checked, half.pass ? "pass" : "fail", half.worst_slack);
  r.expected = "both checks pass, then alpha = 1/2 passes";
  return r;
}

struct Entry {
  CriterionInfo info;
  std::string basis;
  std::function<CriterionResult(const SuiteOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{1, "negquad prox is {1}", {"prox"}}, "reference", c1},
      {{2, "scaled negquad prox at 0 is 1/8", {"prox"}}, "reference", c2},
      {{3, "negquad alpha upper endpoint 2", {"certify"}}, "derived", c3},
      {{4, "logaffine alpha interval", {"certify"}}, "reference+derived", c4},
      {{5, "staircase prox is {n}", {"prox"}}, "reference", c5},
      {{6, "quad2d closed form and PPA iterates", {"prox", "ppa"}}, "reference", c6},
      {{7, "convex baseline alpha interval", {"certify"}}, "reference", c7},
      {{8, "firm nonexpansiveness", {"fne", "property"}}, "reference", c8},
      {{9, "Moreau gradient formula", {"moreau"}}, "reference", c9},
      {{10, "negative controls", {"controls", "probe"}}, "reference", c10},
      {{11, "PPA monotonicity and Fejer", {"ppa"}}, "reference", c11},
      {{12, "strongly G-subdifferentiable pipeline", {"subdiff"}}, "reference", c12},
  };
  return entries;
}

}  // namespace

std::vector<CriterionInfo> suite_criteria() {
  std::vector<CriterionInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

bool matches_filter(const CriterionInfo& c, const std::string& filter) {
  if (filter.empty()) return true;
  if (filter == std::to_string(c.id)) return true;
  if (std::find(c.tags.begin(), c.tags.end(), filter) != c.tags.end()) return true;
  return c.name.find(filter) != std::string::npos;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& e : registry()) {
    if (!matches_filter(e.info, opts.filter)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = e.run(opts);
    } catch (const std::exception& ex) {
      r = CriterionResult{};
      r.pass = false;
      r.measured = fmt::format("error: {}", ex.what());
    }
    r.id = e.info.id;
    r.name = e.info.name;
    r.tags = e.info.tags;
    r.basis = e.basis;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"verdict", r.pass ? "pass" : "fail"},
                    {"basis", r.basis},
                    {"measured", r.measured},
                    {"expected", r.expected},
                    {"note", r.note}});
  }
  return {{"criteria", rows}, {"passed", all}};
}

std::string suite_table(const std::vector<CriterionResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    out += fmt::format("[{}] {:>2} {} ({})\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.basis);
    out += fmt::format("       measured: {}\n", r.measured);
    out += fmt::format("       expected: {}\n", r.expected);
    if (!r.note.empty()) out += fmt::format("       note: {}\n", r.note);
  }
  out += fmt::format("{}/{} criteria passed\n", passed, results.size());
  return out;
}

}  // namespace proxcvx
