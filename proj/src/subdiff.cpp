#include "proxcvx/subdiff.hpp"

#include <cmath>

#include <fmt/format.h>

#include "proxcvx/parallel.hpp"

namespace proxcvx {

std::string to_string(SubdiffKind k) {
  switch (k) {
    case SubdiffKind::kConvex: return "convex";
    case SubdiffKind::kGutierrez: return "gutierrez";
    case SubdiffKind::kPlastria: return "plastria";
  }
  return "?";
}

SubdiffKind subdiff_kind_from_string(const std::string& s) {
  if (s == "convex") return SubdiffKind::kConvex;
  if (s == "gutierrez") return SubdiffKind::kGutierrez;
  if (s == "plastria") return SubdiffKind::kPlastria;
  throw InvalidArgument(fmt::format("unknown subdifferential kind '{}'", s));
}

double strict_margin(double hx) { return 1e-9 * (1.0 + std::abs(hx)); }

namespace {

double feasible_value(const FunctionSpec& f, const Box& set, std::span<const double> x) {
  if (x.size() != f.dimension() || x.size() != set.dimension()) throw InvalidArgument("point has the wrong dimension");
  if (!set.contains(x)) throw InvalidArgument(fmt::format("x = ({}) lies outside the set", format_point(x)));
  const double hx = evaluate(f, x);
  if (hx == kInf) throw InvalidArgument(fmt::format("x = ({}) lies outside the domain", format_point(x)));
  return hx;
}

}  // namespace

MembershipReport in_subdiff(SubdiffKind kind, const FunctionSpec& f, const Box& set, std::span<const double> x,
                            std::span<const double> xi, std::span<const Point> ygrid, double tol) {
  const double hx = feasible_value(f, set, x);
  if (xi.size() != x.size()) throw InvalidArgument("xi has the wrong dimension");
  const double cap = kind == SubdiffKind::kConvex    ? kInf
                     : kind == SubdiffKind::kGutierrez ? hx
                                                       : hx - strict_margin(hx);
  // slack per sample, NaN when the sample is outside the restricted set
  std::vector<double> slack(ygrid.size(), std::nan(""));
  parallel_for(ygrid.size(), [&](std::size_t i) {
    const Point& y = ygrid[i];
    if (!set.contains(y)) return;
    const double hy = evaluate(f, y);
    if (hy == kInf || hy > cap) return;
    const Point d = subtract(y, x);
    slack[i] = hy - hx - dot(xi, d);
  });
  MembershipReport rep;
  rep.kind = kind;
  for (std::size_t i = 0; i < ygrid.size(); ++i) {
    if (std::isnan(slack[i])) continue;
    ++rep.samples_checked;
    if (slack[i] < rep.worst_slack) rep.worst_slack = slack[i];
    if (slack[i] < -tol && rep.member) {
      rep.member = false;
      rep.violator = ygrid[i];
    }
  }
  return rep;
}

std::vector<Point> charmin_probe(std::size_t dim) {
  static constexpr double kLevels[] = {-100.0, -1.0, 0.0, 1.0, 100.0};
  std::vector<Point> out;
  if (dim == 1) {
    for (double a : kLevels) {
      if (a != 0.0) out.push_back({a});
    }
  } else {
    for (double a : kLevels) {
      for (double b : kLevels) {
        if (a != 0.0 || b != 0.0) out.push_back({a, b});
      }
    }
  }
  return out;
}

CharminReport charmin_check(const FunctionSpec& f, const Box& set, std::span<const double> x,
                            std::span<const Point> ygrid) {
  const double hx = feasible_value(f, set, x);
  const Point zero(x.size(), 0.0);
  CharminReport rep;
  rep.zero_in_plastria = in_subdiff(SubdiffKind::kPlastria, f, set, x, zero, ygrid).member;
  rep.zero_in_gutierrez = in_subdiff(SubdiffKind::kGutierrez, f, set, x, zero, ygrid).member;
  rep.minimizes = true;
  for (const auto& y : ygrid) {
    if (set.contains(y) && evaluate(f, y) < hx - strict_margin(hx)) {
      rep.minimizes = false;
      break;
    }
  }
  const std::vector<Point> probe = charmin_probe(x.size());
  rep.probe_size = probe.size();
  rep.probe_in_gutierrez = true;
  for (const auto& xi : probe) {
    if (!in_subdiff(SubdiffKind::kGutierrez, f, set, x, xi, ygrid).member) {
      rep.probe_in_gutierrez = false;
      break;
    }
  }
  rep.agree = rep.zero_in_plastria == rep.zero_in_gutierrez && rep.zero_in_gutierrez == rep.minimizes &&
              rep.minimizes == rep.probe_in_gutierrez;
  return rep;
}

StronglyGReport strongly_G_check(const FunctionSpec& f, const Box& set, std::span<const Point> zgrid,
                                 std::span<const Point> ygrid, std::span<const Triple> triples,
                                 const SolverConfig& cfg, double beta) {
  if (!(beta >= 1.0)) throw InvalidArgument("strong G-subdifferentiability needs beta >= 1");
  StronglyGReport rep;
  for (const auto& z : zgrid) {
    const ProxResult p = prox(ProxQuery{f, set, z}, cfg);
    if (p.attained == Attainment::kDivergent) {
      throw SolverError(fmt::format("prox diverges at z = ({})", format_point(z)));
    }
    if (p.multiplicity == Multiplicity::kMultiple) {
      throw SolverError(fmt::format("prox is multivalued at z = ({})", format_point(z)));
    }
    ++rep.z_checked;
    const Point& xbar = p.point();
    Point xi = subtract(z, xbar);
    for (double& v : xi) v *= 0.5;
    if (!in_subdiff(SubdiffKind::kGutierrez, f, set, xbar, xi, ygrid).member && rep.membership) {
      rep.membership = false;
      rep.failing_z = z;
      rep.failing_xbar = xbar;
    }
  }
  rep.strong = quasiconvexity_probe(QcxKind::kStrong, f, set, triples, beta);
  rep.strong_quasiconvex = rep.strong.consistent;
  rep.pass = rep.membership && rep.strong_quasiconvex;
  return rep;
}

ConsequenceReport strong_qcx_consequence(const FunctionSpec& f, const Box& set, double beta, double alpha,
                                         std::span<const double> x, std::span<const double> xi,
                                         std::span<const Point> ygrid, double tol) {
  if (!(beta > 0.0) || !(alpha > 0.0)) throw InvalidArgument("beta and alpha must be positive");
  const double hx = feasible_value(f, set, x);
  if (xi.size() != x.size()) throw InvalidArgument("xi has the wrong dimension");
  ConsequenceReport rep;
  for (const auto& y : ygrid) {
    if (!set.contains(y)) continue;
    const double hy = evaluate(f, y);
    if (hy == kInf || hy > hx) continue;
    ++rep.samples;
    const Point d = subtract(y, x);
    const double slack = -(beta / (2.0 * alpha)) * squared_norm(d) - dot(xi, d);
    if (slack < rep.worst_slack) rep.worst_slack = slack;
    if (slack < -tol && rep.holds) {
      rep.holds = false;
      rep.violator = y;
    }
  }
  return rep;
}

}  // namespace proxcvx
