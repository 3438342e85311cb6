#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxcvx/catalog.hpp"
#include "proxcvx/types.hpp"

namespace proxcvx {

enum class Attainment { kVerified, kUnverified, kDivergent };
enum class Multiplicity { kSingle, kMultiple };

std::string to_string(Attainment a);
std::string to_string(Multiplicity m);

/// argmin over set of f(x) + ||x - z||^2 / (2 gamma), optionally restricted to
/// the sublevel set {f <= level_cap}.
struct ProxQuery {
  const FunctionSpec& f;
  Box set;
  Point z;
  double gamma = 1.0;
  double level_cap = kInf;

  void validate() const;
};

struct SolverConfig {
  GridSpec grid;
  double refine_tol = 1e-10;
  /// Relative agreement for two minima to count as ties.
  double multiplicity_value_tol = 1e-9;
  double cluster_radius = 1e-6;
  int divergence_expansions = 3;
  bool use_closed_form = true;
  /// Upper bound on the number of grid local minima that get refined.
  int max_local_minima = 64;

  void validate() const;
};

struct ProxResult {
  std::vector<Point> argmin;
  double value = kInf;
  Attainment attained = Attainment::kVerified;
  Multiplicity multiplicity = Multiplicity::kSingle;
  /// Final golden-section bracket width, or the closed-form vs numeric gap.
  double residual = 0.0;
  long evaluations = 0;
  bool closed_form = false;

  bool single() const { return multiplicity == Multiplicity::kSingle && !argmin.empty(); }
  /// The unique minimizer; throws SolverError if there is none or several.
  const Point& point() const;
};

/// f(x) + ||x - z||^2 / (2 gamma); +inf outside set ∩ dom (or above the level cap).
double objective(const ProxQuery& q, std::span<const double> x);

/// Numerical proximity operator over a box.
ProxResult prox(const ProxQuery& q, const SolverConfig& cfg = {});

/// The named exact formula for q, if the function declares one and its shape
/// admits it. Names: "quadratic" (single polynomial piece of degree <= 2 per
/// coordinate), "abs" (c|x|).
std::optional<ProxResult> closed_form_prox(const ProxQuery& q);

/// Moreau envelope value, i.e. the prox objective at the minimizer.
double moreau(const ProxQuery& q, const SolverConfig& cfg = {});

/// alpha (z - prox_{f/alpha}(set, z)).
Point moreau_gradient(const FunctionSpec& f, const Box& set, std::span<const double> z, double alpha,
                      const SolverConfig& cfg = {});

struct Pr2Report {
  bool holds = true;
  /// min over samples of rhs - lhs
  double worst_slack = kInf;
  std::optional<Point> violator;
  std::size_t samples = 0;
};

/// Samples the optimality characterization
///   f(xbar) - f(x) <= <xbar + x - 2z, x - xbar> / (2 gamma)
/// at every x in xs ∩ set ∩ dom.
Pr2Report check_pr2(const ProxQuery& q, std::span<const double> xbar, std::span<const Point> xs,
                    double tol = 1e-9);

/// Global minimization of f over set (no proximal term), same machinery.
ProxResult minimize(const FunctionSpec& f, const Box& set, const SolverConfig& cfg = {});

}  // namespace proxcvx
