#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proxcvx/types.hpp"

namespace proxcvx {

/// Which ends of a piece's interval belong to it.
enum class Closure { kClosed, kLeftClosed, kRightClosed, kOpen };

enum class PieceKind {
  /// c0 + c1 x + c2 x^2 + c3 x^3
  kPoly,
  /// c0 + c1 x + c2 ln(1 + c3 x), +inf where 1 + c3 x <= 0
  kLog,
};

enum class Continuity { kContinuous, kLsc, kNotLsc };

struct Piece {
  double lo = -kInf;
  double hi = kInf;
  Closure closure = Closure::kClosed;
  PieceKind kind = PieceKind::kPoly;
  std::vector<double> coeffs;

  bool includes_lo() const { return closure == Closure::kClosed || closure == Closure::kLeftClosed; }
  bool includes_hi() const { return closure == Closure::kClosed || closure == Closure::kRightClosed; }
  bool contains(double x) const;
  /// The symbolic expression at x, ignoring the piece interval.
  double formula(double x) const;
  /// Derivative of formula; nan where the formula is +inf.
  double slope(double x) const;

  bool operator==(const Piece&) const = default;
};

/// Overrides the piece value at a single point.
struct PointException {
  double x = 0.0;
  double value = 0.0;
  bool operator==(const PointException&) const = default;
};

struct Breakpoint {
  double x = 0.0;
  double left_limit = 0.0;
  double right_limit = 0.0;
  double value = 0.0;
  Continuity continuity = Continuity::kContinuous;
};

/// A piecewise univariate function. Pieces tile a closed interval: adjacent
/// pieces share an end and exactly one of them owns it.
class Univariate {
 public:
  explicit Univariate(std::vector<Piece> pieces, std::vector<PointException> exceptions = {});

  /// Value at x; +inf outside the domain.
  double operator()(double x) const;
  const Piece* piece_at(double x) const;
  /// Value of the piece governing the open region just left/right of x.
  double left_limit(double x) const;
  double right_limit(double x) const;

  const Interval& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<PointException>& exceptions() const { return exceptions_; }
  /// Interior piece boundaries and exception points, strictly increasing.
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  Univariate scaled(double factor) const;

  bool operator==(const Univariate& o) const {
    return pieces_ == o.pieces_ && exceptions_ == o.exceptions_;
  }

 private:
  std::vector<Piece> pieces_;
  std::vector<PointException> exceptions_;
  std::vector<Breakpoint> breakpoints_;
  Interval domain_;
};

/// A one-dimensional function or a separable sum of two of them.
struct FunctionSpec {
  std::string id;
  std::vector<Univariate> terms;
  /// Name of an exact prox formula, see prox.hpp.
  std::optional<std::string> closed_form_prox;

  std::size_t dimension() const { return terms.size(); }
  Box domain() const;
  bool operator==(const FunctionSpec&) const = default;
};

/// Extended-real evaluation: +inf outside the declared domain.
double evaluate(const FunctionSpec& f, std::span<const double> x);

/// Builds one of the catalogued example functions.
///
/// Names: negquad, staircase (param n >= 3, default 3), logaffine,
/// cubic_shifted (param n >= 1, default 3),
/// negcubic, quad2d, abs, halfsquare, indicator_spike.
FunctionSpec builtin(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_names();

/// factor * f, same pieces and domain.
FunctionSpec scaled(const FunctionSpec& f, double factor);

struct GridSpec {
  int points_per_coordinate = 4097;
  bool include_breakpoints = true;
  /// Half-width of the sampling window on unbounded axes.
  double window_radius = 16.0;
  /// Maximum number of window doublings before a solve gives up.
  int expansion_cap = 12;

  void validate() const;
};

/// Finite interval used for sampling: finite ends kept, infinite ends replaced
/// by a window of the given radius around the finite end (or the origin).
Interval sampling_window(const Interval& axis, double radius);

/// Uniform samples of axis (windowed if unbounded), with the function's
/// breakpoints inside it injected when requested.
std::vector<double> axis_samples(const Univariate& f, const Interval& axis, const GridSpec& grid);

/// Tensor product of axis_samples over set ∩ dom.
std::vector<Point> sample_points(const FunctionSpec& f, const Box& set, const GridSpec& grid);

}  // namespace proxcvx
