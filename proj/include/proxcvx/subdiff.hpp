#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxcvx/catalog.hpp"
#include "proxcvx/diagnostics.hpp"
#include "proxcvx/prox.hpp"

namespace proxcvx {

enum class SubdiffKind { kConvex, kGutierrez, kPlastria };
std::string to_string(SubdiffKind k);
SubdiffKind subdiff_kind_from_string(const std::string& s);

struct MembershipReport {
  SubdiffKind kind = SubdiffKind::kConvex;
  bool member = true;
  std::size_t samples_checked = 0;
  /// min over checked y of h(y) - h(x) - <xi, y - x>
  double worst_slack = kInf;
  std::optional<Point> violator;
};

/// Margin that realizes the strict sublevel set {h < h(x)} as {h <= h(x) - eps}.
double strict_margin(double hx);

/// Samples h(y) >= h(x) + <xi, y - x> over ygrid ∩ set, further restricted to
/// the sublevel set (gutierrez) or the strict sublevel set (plastria).
MembershipReport in_subdiff(SubdiffKind kind, const FunctionSpec& f, const Box& set, std::span<const double> x,
                            std::span<const double> xi, std::span<const Point> ygrid, double tol = 1e-9);

struct CharminReport {
  bool zero_in_plastria = false;
  bool zero_in_gutierrez = false;
  bool minimizes = false;
  bool probe_in_gutierrez = false;
  /// The four statements above share one truth value.
  bool agree = false;
  std::size_t probe_size = 0;
};

/// Probe set: every nonzero vector with coordinates in {-100, -1, 0, 1, 100}.
std::vector<Point> charmin_probe(std::size_t dim);

CharminReport charmin_check(const FunctionSpec& f, const Box& set, std::span<const double> x,
                            std::span<const Point> ygrid);

struct StronglyGReport {
  bool membership = true;
  bool strong_quasiconvex = true;
  bool pass = true;
  std::size_t z_checked = 0;
  std::optional<Point> failing_z;
  std::optional<Point> failing_xbar;
  ProbeReport strong;
};

/// For each z: xbar = prox(z), then (z - xbar)/2 must lie in the Gutierrez
/// subdifferential at xbar; plus the strong(beta) sampler on triples.
/// Throws SolverError when a prox is multivalued or divergent.
StronglyGReport strongly_G_check(const FunctionSpec& f, const Box& set, std::span<const Point> zgrid,
                                 std::span<const Point> ygrid, std::span<const Triple> triples,
                                 const SolverConfig& cfg = {}, double beta = 1.0);

struct ConsequenceReport {
  bool holds = true;
  std::size_t samples = 0;
  double worst_slack = kInf;
  std::optional<Point> violator;
};

/// <xi, y - x> <= -(beta / (2 alpha)) ||y - x||^2 on ygrid ∩ set ∩ {h <= h(x)}.
ConsequenceReport strong_qcx_consequence(const FunctionSpec& f, const Box& set, double beta, double alpha,
                                         std::span<const double> x, std::span<const double> xi,
                                         std::span<const Point> ygrid, double tol = 1e-9);

}  // namespace proxcvx
