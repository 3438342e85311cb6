#include "proxcvx/certify.hpp"

#include <cmath>

#include <fmt/format.h>

#include "proxcvx/parallel.hpp"

namespace proxcvx {

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::kCertified: return "certified";
    case CertificateStatus::kRefuted: return "refuted";
    case CertificateStatus::kIndeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(BoundType b) {
  switch (b) {
    case BoundType::kLower: return "lower";
    case BoundType::kUpper: return "upper";
    case BoundType::kInfeasible: return "infeasible";
    case BoundType::kVacuous: return "vacuous";
    case BoundType::kMultivalued: return "multivalued";
  }
  return "?";
}

bool AlphaCertificate::contains(double alpha) const {
  if (status == CertificateStatus::kRefuted) return false;
  const bool above = lower_closed ? alpha >= lower : alpha > lower;
  const bool below = upper_closed ? alpha <= upper : alpha < upper;
  return above && below;
}

double alpha_tolerance(double lhs) { return 1e-9 * (1.0 + std::abs(lhs)); }

std::vector<Point> default_zgrid(const FunctionSpec& f, const Box& set, const GridSpec& base) {
  GridSpec g = base;
  g.points_per_coordinate = 33;
  g.include_breakpoints = true;
  return sample_points(f, set, g);
}

std::vector<Point> default_xgrid(const FunctionSpec& f, const Box& set, const GridSpec& base) {
  GridSpec g = base;
  g.points_per_coordinate = 257;
  g.include_breakpoints = true;
  return sample_points(f, set, g);
}

namespace {

struct PerZ {
  ProxResult prox;
  double lower = 0.0;
  double upper = kInf;
  std::optional<Witness> lower_binding;
  std::optional<Witness> upper_binding;
  std::optional<Witness> infeasible;
  std::vector<Constraint> table;
  std::size_t x_samples = 0;
};

Constraint classify(Witness w) {
  Constraint c;
  const double lhs_eff = w.lhs - alpha_tolerance(w.lhs);
  const double scale = distance(w.xbar, w.z) * distance(w.x, w.xbar);
  const double eps = 1e-12 * (1.0 + scale);
  if (w.ip > eps) {
    c.type = lhs_eff > 0.0 ? BoundType::kLower : BoundType::kVacuous;
    if (lhs_eff > 0.0) c.bound = lhs_eff / w.ip;
  } else if (w.ip >= -eps) {
    if (lhs_eff > 0.0) {
      c.type = BoundType::kInfeasible;
    } else if (w.ip < 0.0) {
      c.type = BoundType::kUpper;
      c.bound = lhs_eff / w.ip;
    } else {
      c.type = BoundType::kVacuous;
    }
  } else if (lhs_eff >= 0.0) {
    c.type = BoundType::kInfeasible;
  } else {
    c.type = BoundType::kUpper;
    c.bound = lhs_eff / w.ip;
  }
  c.witness = std::move(w);
  return c;
}

}  // namespace

AlphaCertificate alpha_interval(const FunctionSpec& f, const Box& set, std::span<const Point> zgrid,
                                std::span<const Point> xgrid, const CertifyOptions& opts) {
  if (zgrid.empty() || xgrid.empty()) throw InvalidArgument("certification grids must be nonempty");
  if (set.intersect(f.domain()).empty()) throw InvalidArgument("set does not meet the function's domain");

  std::vector<Point> xs;
  std::vector<double> hx;
  for (const auto& x : xgrid) {
    if (!set.contains(x)) continue;
    const double v = evaluate(f, x);
    if (v == kInf) continue;
    xs.push_back(x);
    hx.push_back(v);
  }
  if (xs.empty()) throw InvalidArgument("no x sample lies in set ∩ dom");

  std::vector<PerZ> work(zgrid.size());
  parallel_for(
      zgrid.size(),
      [&](std::size_t k) {
        PerZ& w = work[k];
        const ProxQuery q{f, set, zgrid[k]};
        w.prox = prox(q, opts.solver);
        if (!w.prox.single() || w.prox.attained != Attainment::kVerified) return;
        const Point& xbar = w.prox.point();
        const double hbar = evaluate(f, xbar);
        const Point dz = subtract(xbar, zgrid[k]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          ++w.x_samples;
          Witness wit{zgrid[k], xbar, xs[j], hbar - hx[j], dot(dz, subtract(xs[j], xbar))};
          Constraint c = classify(std::move(wit));
          switch (c.type) {
            case BoundType::kLower:
              if (c.bound > w.lower) {
                w.lower = c.bound;
                w.lower_binding = c.witness;
              }
              break;
            case BoundType::kUpper:
              if (c.bound < w.upper) {
                w.upper = c.bound;
                w.upper_binding = c.witness;
              }
              break;
            case BoundType::kInfeasible:
              if (!w.infeasible) w.infeasible = c.witness;
              break;
            default:
              break;
          }
          if (opts.keep_table && c.type != BoundType::kVacuous) w.table.push_back(std::move(c));
        }
      },
      1);

  AlphaCertificate cert;
  cert.z_samples = zgrid.size();
  cert.x_samples = xs.size();

  // multivaluedness refutes before any inequality is looked at
  for (std::size_t k = 0; k < work.size(); ++k) {
    const ProxResult& p = work[k].prox;
    if (p.attained != Attainment::kDivergent && p.multiplicity == Multiplicity::kMultiple) {
      const Point& a = p.argmin[0];
      const Point& b = p.argmin[1];
      Witness w{zgrid[k], a, b, evaluate(f, a) - evaluate(f, b), dot(subtract(a, zgrid[k]), subtract(b, a))};
      cert.status = CertificateStatus::kRefuted;
      cert.witness = w;
      cert.diagnostic = fmt::format("prox is multivalued at z = ({})", format_point(zgrid[k]));
      if (opts.keep_table) cert.table.push_back({w, BoundType::kMultivalued, 0.0});
      return cert;
    }
  }
  for (std::size_t k = 0; k < work.size(); ++k) {
    const ProxResult& p = work[k].prox;
    if (p.attained == Attainment::kDivergent) {
      cert.diagnostic = fmt::format("prox diverges at z = ({})", format_point(zgrid[k]));
      return cert;
    }
    if (p.attained == Attainment::kUnverified) {
      cert.diagnostic =
          fmt::format("prox attainment cannot be verified at z = ({}) (minimizer sits at a non-lsc point)",
                      format_point(zgrid[k]));
      return cert;
    }
  }

  bool infeasible = false;
  for (auto& w : work) {
    if (w.infeasible && !infeasible) {
      infeasible = true;
      cert.witness = w.infeasible;
    }
    if (w.lower > cert.lower) {
      cert.lower = w.lower;
      cert.lower_closed = true;
      cert.lower_binding = w.lower_binding;
    }
    if (w.upper < cert.upper) {
      cert.upper = w.upper;
      cert.upper_closed = true;
      cert.upper_binding = w.upper_binding;
    }
    if (opts.keep_table) {
      for (auto& c : w.table) cert.table.push_back(std::move(c));
    }
  }
  if (infeasible) {
    cert.status = CertificateStatus::kRefuted;
    cert.diagnostic = "a sampled pair violates the inequality for every alpha > 0";
  } else if (cert.lower > cert.upper) {
    cert.status = CertificateStatus::kRefuted;
    cert.witness = cert.upper_binding;
    cert.diagnostic = fmt::format("lower bound {} exceeds upper bound {}", cert.lower, cert.upper);
  } else if (!(cert.lower < cert.upper)) {
    cert.diagnostic = "feasible set is a single point";
  } else {
    cert.status = CertificateStatus::kCertified;
  }
  return cert;
}

AlphaCheck check_alpha(const FunctionSpec& f, const Box& set, double alpha, std::span<const Point> zgrid,
                       std::span<const Point> xgrid, const SolverConfig& cfg) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  AlphaCheck out;
  for (const auto& z : zgrid) {
    const ProxResult p = prox(ProxQuery{f, set, z}, cfg);
    if (p.attained == Attainment::kDivergent) {
      throw SolverError(fmt::format("prox diverges at z = ({})", format_point(z)));
    }
    for (const auto& xbar : p.argmin) {
      const double hbar = evaluate(f, xbar);
      const Point dz = subtract(xbar, z);
      for (const auto& x : xgrid) {
        if (!set.contains(x)) continue;
        const double hx = evaluate(f, x);
        if (hx == kInf) continue;
        ++out.pairs;
        const double lhs = hbar - hx;
        const double ip = dot(dz, subtract(x, xbar));
        const double slack = alpha * ip - lhs;
        out.worst_slack = std::min(out.worst_slack, slack);
        if (lhs > alpha * ip + alpha_tolerance(lhs) && out.pass) {
          out.pass = false;
          out.violator = Witness{z, xbar, x, lhs, ip};
        }
      }
    }
  }
  return out;
}

FirmReport check_firm_nonexpansive(const FunctionSpec& f, const Box& set,
                                   std::span<const std::pair<Point, Point>> pairs, const SolverConfig& cfg,
                                   double tol) {
  auto apply = [&](const Point& z) {
    const ProxResult r = prox(ProxQuery{f, set, z}, cfg);
    if (r.attained == Attainment::kDivergent) throw SolverError("prox diverges at a sampled point");
    if (r.multiplicity == Multiplicity::kMultiple) {
      throw SolverError(fmt::format("prox is multivalued at z = ({})", format_point(z)));
    }
    return r.point();
  };
  std::vector<double> fnem(pairs.size());
  std::vector<double> fne(pairs.size());
  parallel_for(
      pairs.size(),
      [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        const Point tx = apply(x);
        const Point ty = apply(y);
        const Point d = subtract(x, y);
        const Point dt = subtract(tx, ty);
        const Point dr = subtract(d, dt);
        fnem[i] = dot(d, dt) - squared_norm(dt);
        fne[i] = squared_norm(d) - squared_norm(dt) - squared_norm(dr);
      },
      16);
  FirmReport rep;
  rep.pairs = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    rep.worst_fnem_slack = std::min(rep.worst_fnem_slack, fnem[i]);
    rep.worst_fne_slack = std::min(rep.worst_fne_slack, fne[i]);
    if ((fnem[i] < -tol || fne[i] < -tol) && !rep.violator) rep.violator = pairs[i];
  }
  rep.fnem_holds = rep.worst_fnem_slack >= -tol;
  rep.fne_holds = rep.worst_fne_slack >= -tol;
  return rep;
}

ScalingReport scaling_consistency(const FunctionSpec& f, const Box& set, double alpha, std::span<const Point> zgrid,
                                  const SolverConfig& cfg, double tol) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  ScalingReport rep;
  for (const auto& z : zgrid) {
    ++rep.samples;
    const ProxResult scaled = prox(ProxQuery{f, set, z, 1.0 / alpha}, cfg);
    const ProxResult plain = prox(ProxQuery{f, set, z}, cfg);
    bool same = scaled.single() && plain.single();
    if (same) same = distance(scaled.point(), plain.point()) <= tol;
    if (!same) {
      rep.agree = false;
      rep.first_difference = z;
      if (!scaled.argmin.empty()) rep.scaled_prox = scaled.argmin.front();
      if (!plain.argmin.empty()) rep.plain_prox = plain.argmin.front();
      break;
    }
  }
  return rep;
}

}  // namespace proxcvx
