#include "proxcvx/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace proxcvx {

std::string to_string(QcxKind k) {
  switch (k) {
    case QcxKind::kQuasiconvex: return "quasiconvex";
    case QcxKind::kSemistrict: return "semistrict";
    case QcxKind::kStrict: return "strict";
    case QcxKind::kStrong: return "strong";
  }
  return "?";
}

ProbeReport quasiconvexity_probe(QcxKind kind, const FunctionSpec& f, const Box& set, std::span<const Triple> triples,
                                 double beta, double tol) {
  if (kind == QcxKind::kStrong && !(beta > 0.0)) throw InvalidArgument("strong quasiconvexity needs beta > 0");
  ProbeReport rep;
  rep.property = kind == QcxKind::kStrong ? fmt::format("strong({})", beta) : to_string(kind);
  Point m;
  for (const auto& t : triples) {
    if (!(t.lambda >= 0.0 && t.lambda <= 1.0)) throw InvalidArgument("lambda must lie in [0, 1]");
    if (!set.contains(t.x) || !set.contains(t.y)) continue;
    const double hx = evaluate(f, t.x);
    const double hy = evaluate(f, t.y);
    if (hx == kInf || hy == kInf) continue;
    m.resize(t.x.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = t.lambda * t.y[i] + (1.0 - t.lambda) * t.x[i];
    const double hm = evaluate(f, m);
    const double top = std::max(hx, hy);
    const bool interior = t.lambda > 0.0 && t.lambda < 1.0;
    bool violated = false;
    double rhs = top;
    switch (kind) {
      case QcxKind::kQuasiconvex:
        violated = hm > top + tol;
        break;
      case QcxKind::kSemistrict:
        if (!interior || std::abs(hx - hy) <= tol) continue;
        violated = hm >= top;
        break;
      case QcxKind::kStrict:
        if (!interior || t.x == t.y) continue;
        violated = hm >= top;
        break;
      case QcxKind::kStrong: {
        const double margin = t.lambda * (1.0 - t.lambda) * 0.5 * beta * squared_distance(t.x, t.y);
        rhs = top - margin;
        violated = hm > rhs + std::min(tol, 0.5 * margin);
        break;
      }
    }
    ++rep.samples;
    if (violated && rep.consistent) {
      rep.consistent = false;
      rep.violator = Violation{{t.x, t.y, m}, {t.lambda}, hm, rhs};
    }
  }
  return rep;
}

std::vector<Triple> grid_triples(const FunctionSpec& f, const Box& set, int points, std::span<const double> lambdas,
                                 double window_radius) {
  GridSpec g;
  g.points_per_coordinate = points;
  g.window_radius = window_radius;
  const std::vector<Point> pts = sample_points(f, set, g);
  std::vector<Triple> out;
  out.reserve(pts.size() * (pts.size() - 1) / 2 * lambdas.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (double l : lambdas) out.push_back({pts[i], pts[j], l});
    }
  }
  return out;
}

std::vector<Triple> random_triples(const FunctionSpec& f, const Box& set, std::size_t count, std::uint64_t seed,
                                   double window_radius) {
  const Box feasible = set.intersect(f.domain());
  if (feasible.empty()) throw InvalidArgument("set does not meet the function's domain");
  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> axes;
  for (const auto& a : feasible.axes()) {
    const Interval w = sampling_window(a, window_radius);
    axes.emplace_back(w.lo, w.hi);
  }
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  std::vector<Triple> out(count);
  for (auto& t : out) {
    for (auto& d : axes) t.x.push_back(d(rng));
    for (auto& d : axes) t.y.push_back(d(rng));
    t.lambda = lam(rng);
  }
  return out;
}

std::vector<Triple> default_triples(const FunctionSpec& f, const Box& set) {
  if (f.dimension() == 1) {
    constexpr std::array<double, 3> lambdas{0.25, 0.5, 0.75};
    return grid_triples(f, set, 257, lambdas);
  }
  return random_triples(f, set, 20000, 12345);
}

namespace {

std::vector<Point> default_directions(std::size_t dim) {
  if (dim == 1) return {{1.0}, {-1.0}};
  const double s = std::sqrt(0.5);
  return {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {s, s}, {s, -s}, {-s, s}, {-s, -s}};
}

}  // namespace

CoercivityReport coercivity_probe(const FunctionSpec& f, std::span<const Point> directions,
                                  std::span<const double> radii) {
  std::vector<Point> dirs(directions.begin(), directions.end());
  if (dirs.empty()) dirs = default_directions(f.dimension());
  std::vector<double> rs(radii.begin(), radii.end());
  if (rs.empty()) rs = {10.0, 100.0, 1000.0, 10000.0};
  if (rs.size() < 2) throw InvalidArgument("coercivity probe needs at least two radii");
  for (std::size_t i = 1; i < rs.size(); ++i) {
    if (!(rs[i] > rs[i - 1]) || !(rs[0] > 0.0)) throw InvalidArgument("radii must be positive and increasing");
  }

  CoercivityReport rep;
  rep.supercoercive = rep.coercive = rep.weakly_coercive = rep.two_weakly_coercive = true;
  const double ra = rs[rs.size() - 2];
  const double rb = rs.back();
  for (const auto& d : dirs) {
    if (d.size() != f.dimension()) throw InvalidArgument("direction has the wrong dimension");
    const double len = norm(d);
    if (!(len > 0.0)) throw InvalidArgument("direction must be nonzero");
    auto at = [&](double r) {
      Point x(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) x[i] = r * d[i] / len;
      return evaluate(f, x);
    };
    for (double r : rs) {
      if (at(r) == kInf) {
        rep = CoercivityReport{};
        rep.classification = "bounded-domain";
        rep.bounded_domain = true;
        return rep;
      }
    }
    const double ha = at(ra);
    const double hb = at(rb);
    const double q1a = ha / ra, q1b = hb / rb;
    const double q2a = ha / (ra * ra), q2b = hb / (rb * rb);
    rep.ratios.push_back({q1a, q1b, q2a, q2b});
    // trend of the last two radii
    const bool super = q1b > q1a && q1b > 0.0;
    const bool coer = hb > ha && hb > 0.0;
    const bool weak = q1b >= 0.0 || q1b > q1a;
    const bool weak2 = q2b >= 0.0 || q2b > q2a;
    rep.supercoercive = rep.supercoercive && super;
    rep.coercive = rep.coercive && coer;
    rep.weakly_coercive = rep.weakly_coercive && weak;
    rep.two_weakly_coercive = rep.two_weakly_coercive && weak2;
  }
  if (rep.supercoercive) rep.classification = "supercoercive";
  else if (rep.coercive) rep.classification = "coercive";
  else if (rep.weakly_coercive) rep.classification = "weakly-coercive";
  else if (rep.two_weakly_coercive) rep.classification = "2-weakly-coercive";
  else rep.classification = "not-2-weakly-coercive";
  return rep;
}

ProbeReport identity_selftest(std::uint64_t seed, std::size_t samples) {
  ProbeReport rep;
  rep.property = "inner-product identities";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ub(-2.0, 2.0);
  auto vec = [&] { return Point{u(rng), u(rng), u(rng)}; };
  constexpr double kTol = 1e-12;
  auto record = [&](std::vector<Point> pts, std::vector<double> scalars, double lhs, double rhs) {
    ++rep.samples;
    if (std::abs(lhs - rhs) > kTol && rep.consistent) {
      rep.consistent = false;
      rep.violator = Violation{std::move(pts), std::move(scalars), lhs, rhs};
    }
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const Point x = vec(), y = vec(), z = vec();
    const double lhs = dot(subtract(x, z), subtract(y, x));
    const double rhs = 0.5 * squared_distance(z, y) - 0.5 * squared_distance(x, z) - 0.5 * squared_distance(y, x);
    record({x, y, z}, {}, lhs, rhs);
  }
  auto combination = [&](const Point& x, const Point& y, double b) {
    Point m(x.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = b * x[i] + (1.0 - b) * y[i];
    const double lhs = squared_norm(m);
    const double rhs = b * squared_norm(x) + (1.0 - b) * squared_norm(y) - b * (1.0 - b) * squared_distance(x, y);
    record({x, y}, {b}, lhs, rhs);
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const Point x = vec(), y = vec();
    combination(x, y, ub(rng));
  }
  const Point x = vec(), y = vec();
  combination(x, y, 0.0);
  combination(x, y, 1.0);
  return rep;
}

}  // namespace proxcvx
