#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxcvx/catalog.hpp"

namespace proxcvx {

enum class QcxKind { kQuasiconvex, kSemistrict, kStrict, kStrong };
std::string to_string(QcxKind k);

/// The point lambda * y + (1 - lambda) * x on the segment [x, y].
struct Triple {
  Point x;
  Point y;
  double lambda = 0.5;
};

struct Violation {
  std::vector<Point> points;
  std::vector<double> scalars;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ProbeReport {
  std::string property;
  bool consistent = true;
  std::size_t samples = 0;
  std::optional<Violation> violator;
};

/// Checks a quasiconvexity-type inequality at every triple (tolerance tol):
///   quasiconvex  h(m) <= max{h(x), h(y)}
///   semistrict   h(m) <  max{h(x), h(y)} whenever h(x) != h(y), 0 < lambda < 1
///   strict       h(m) <  max{h(x), h(y)} whenever x != y, 0 < lambda < 1
///   strong       h(m) <= max{h(x), h(y)} - lambda (1 - lambda) beta/2 ||x - y||^2
/// Triples with a point outside set ∩ dom are skipped.
///
/// The strong test allows slack min(tol, margin / 2), so a strong pass is also a
/// semistrict and quasiconvex pass on the same triples.
ProbeReport quasiconvexity_probe(QcxKind kind, const FunctionSpec& f, const Box& set, std::span<const Triple> triples,
                                 double beta = 1.0, double tol = 1e-9);

/// All pairs of grid points (breakpoints injected) with each lambda.
std::vector<Triple> grid_triples(const FunctionSpec& f, const Box& set, int points,
                                 std::span<const double> lambdas, double window_radius = 16.0);

/// Uniform random triples in the sampling window of set ∩ dom.
std::vector<Triple> random_triples(const FunctionSpec& f, const Box& set, std::size_t count, std::uint64_t seed,
                                   double window_radius = 16.0);

/// 257-point grid pairs with lambda in {1/4, 1/2, 3/4} in one dimension,
/// 20000 seeded random triples in two.
std::vector<Triple> default_triples(const FunctionSpec& f, const Box& set);

struct CoercivityReport {
  /// Strongest consistent level: "supercoercive", "coercive", "weakly-coercive",
  /// "2-weakly-coercive", "not-2-weakly-coercive", or "bounded-domain".
  std::string classification;
  bool supercoercive = false;
  bool coercive = false;
  bool weakly_coercive = false;
  bool two_weakly_coercive = false;
  bool bounded_domain = false;
  /// A finite probe corroborates a liminf statement; it never proves one.
  bool heuristic = true;
  /// h(r d) / r and h(r d) / r^2 at the last two radii, per direction.
  std::vector<std::vector<double>> ratios;
};

CoercivityReport coercivity_probe(const FunctionSpec& f, std::span<const Point> directions = {},
                                  std::span<const double> radii = {});

/// Checks <x - z, y - x> = (||z - y||^2 - ||x - z||^2 - ||y - x||^2) / 2 and
/// ||b x + (1-b) y||^2 = b||x||^2 + (1-b)||y||^2 - b(1-b)||x - y||^2 on 1000
/// seeded random samples each, to 1e-12.
ProbeReport identity_selftest(std::uint64_t seed = 7, std::size_t samples = 1000);

}  // namespace proxcvx
