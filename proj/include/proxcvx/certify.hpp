#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxcvx/catalog.hpp"
#include "proxcvx/prox.hpp"

namespace proxcvx {

enum class CertificateStatus { kCertified, kRefuted, kIndeterminate };
std::string to_string(CertificateStatus s);

/// One sampled instance of f(xbar) - f(x) <= alpha <xbar - z, x - xbar>.
struct Witness {
  Point z;
  Point xbar;
  Point x;
  double lhs = 0.0;  // f(xbar) - f(x)
  double ip = 0.0;   // <xbar - z, x - xbar>
};

enum class BoundType { kLower, kUpper, kInfeasible, kVacuous, kMultivalued };
std::string to_string(BoundType b);

struct Constraint {
  Witness witness;
  BoundType type = BoundType::kVacuous;
  double bound = 0.0;
};

/// Feasible set of prox-convex values over a finite sample.
///
/// The interval is the exact intersection of the per-pair constraints with
/// (0, +inf). Endpoints coming from a constraint are closed; the ends 0 and
/// +inf are open.
struct AlphaCertificate {
  CertificateStatus status = CertificateStatus::kIndeterminate;
  double lower = 0.0;
  double upper = kInf;
  bool lower_closed = false;
  bool upper_closed = false;
  std::optional<Witness> lower_binding;
  std::optional<Witness> upper_binding;
  /// Refutation witness (violating pair, or the two prox points when multivalued).
  std::optional<Witness> witness;
  std::string diagnostic;
  std::size_t z_samples = 0;
  std::size_t x_samples = 0;
  /// Every non-vacuous constraint, filled when requested.
  std::vector<Constraint> table;

  bool contains(double alpha) const;
};

struct CertifyOptions {
  SolverConfig solver;
  bool keep_table = false;
};

/// Default z and x grids: 33 and 257 points per coordinate, breakpoints injected.
std::vector<Point> default_zgrid(const FunctionSpec& f, const Box& set, const GridSpec& base = {});
std::vector<Point> default_xgrid(const FunctionSpec& f, const Box& set, const GridSpec& base = {});

/// Additive tolerance used for the defining inequality: 1e-9 (1 + |lhs|).
double alpha_tolerance(double lhs);

AlphaCertificate alpha_interval(const FunctionSpec& f, const Box& set, std::span<const Point> zgrid,
                                std::span<const Point> xgrid, const CertifyOptions& opts = {});

struct AlphaCheck {
  bool pass = true;
  std::optional<Witness> violator;
  double worst_slack = kInf;
  std::size_t pairs = 0;
};

/// Direct check of one alpha on the grids. Throws SolverError on a divergent prox.
AlphaCheck check_alpha(const FunctionSpec& f, const Box& set, double alpha, std::span<const Point> zgrid,
                       std::span<const Point> xgrid, const SolverConfig& cfg = {});

struct FirmReport {
  bool fnem_holds = true;  // ||Tx - Ty||^2 <= <x - y, Tx - Ty>
  bool fne_holds = true;   // ||Tx - Ty||^2 + ||(I-T)x - (I-T)y||^2 <= ||x - y||^2
  double worst_fnem_slack = kInf;
  double worst_fne_slack = kInf;
  std::optional<std::pair<Point, Point>> violator;
  std::size_t pairs = 0;
};

FirmReport check_firm_nonexpansive(const FunctionSpec& f, const Box& set,
                                   std::span<const std::pair<Point, Point>> pairs, const SolverConfig& cfg = {},
                                   double tol = 1e-9);

struct ScalingReport {
  bool agree = true;
  std::optional<Point> first_difference;  // z
  std::optional<Point> scaled_prox;       // prox_{f/alpha}(set, z)
  std::optional<Point> plain_prox;        // prox_f(set, z)
  std::size_t samples = 0;
};

/// Compares prox_{f/alpha} with prox_f along zgrid.
ScalingReport scaling_consistency(const FunctionSpec& f, const Box& set, double alpha, std::span<const Point> zgrid,
                                  const SolverConfig& cfg = {}, double tol = 1e-6);

}  // namespace proxcvx
