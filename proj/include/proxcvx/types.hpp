#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxcvx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A point of R^1 or R^2. Functions in this library are at most two dimensional.
using Point = std::vector<double>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot deliver what its contract promises,
/// e.g. a gradient requested at a point where the prox is multivalued.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval with possibly infinite ends.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool empty() const { return !(lo <= hi); }
  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  Interval intersect(const Interval& o) const {
    return {lo > o.lo ? lo : o.lo, hi < o.hi ? hi : o.hi};
  }
  bool operator==(const Interval&) const = default;
};

/// Closed axis-aligned box, one interval per coordinate.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> axes);
  static Box line(double lo, double hi) { return Box({Interval{lo, hi}}); }
  static Box whole(std::size_t dim) { return Box(std::vector<Interval>(dim)); }

  std::size_t dimension() const { return axes_.size(); }
  const Interval& operator[](std::size_t i) const { return axes_[i]; }
  const std::vector<Interval>& axes() const { return axes_; }

  bool contains(std::span<const double> x) const;
  bool bounded() const;
  /// Intersection; may be empty (check with empty()).
  Box intersect(const Box& o) const;
  bool empty() const;
  bool operator==(const Box&) const = default;

 private:
  std::vector<Interval> axes_;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double norm(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);
Point subtract(std::span<const double> a, std::span<const double> b);

std::string format_point(std::span<const double> x, char sep = ',');

}  // namespace proxcvx
