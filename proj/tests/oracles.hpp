#pragma once

// Independent reference computations. Nothing here calls the solver; the
// functions are re-typed from their formulas and minimized by exhaustive grids.

#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

using Fn = std::function<double(double)>;

inline double negquad(double x) { return (x >= 0 && x <= 1) ? -x * x - x : inf; }
inline double logaffine(double x) { return (x >= 1 && x <= 2) ? 5 * x + std::log(1 + 10 * x) : inf; }
inline double halfsquare(double x) { return 0.5 * x * x; }
inline double absval(double x) { return std::abs(x); }
inline Fn staircase(int n) {
  return [n](double x) {
    if (x < 1 || x > n) return inf;
    if (x <= 2) return 1 - x * x * x;
    const double k = std::ceil(x) - 1;  // x in (k, k+1]
    return 1 - k - x * x * x;
  };
}
inline Fn cubic_shifted(int n) {
  return [n](double x) { return x >= -n ? x * x * x : inf; };
}

struct Min {
  double x = 0;
  double value = inf;
};

/// Exhaustive minimization of f(x) + w (x - z)^2 over n + 1 uniform points of [lo, hi].
inline Min grid_min(const Fn& f, double lo, double hi, double z, double w, int n = 200000) {
  Min best;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = f(x) + w * (x - z) * (x - z);
    if (v < best.value) best = {x, v};
  }
  return best;
}

/// argmin over [lo, hi] of f(x) + (x - z)^2 / (2 gamma), exhaustive grid.
inline Min prox(const Fn& f, double lo, double hi, double z, double gamma = 1.0, int n = 200000) {
  return grid_min(f, lo, hi, z, 0.5 / gamma, n);
}

/// Closed-form prox of quad2d on [0, 2] x R (gamma = 1); first coordinate set(s).
inline std::vector<double> quad2d_first(double z1) {
  if (z1 < -2) return {0.0};
  if (z1 > -2) return {2.0};
  return {0.0, 2.0};
}

/// Exact alpha interval from explicit samples: (lower, upper) of
/// {alpha > 0 : lhs <= alpha ip} for every pair, brute force.
struct AlphaBounds {
  double lower = 0;
  double upper = inf;
  bool infeasible = false;
};

inline AlphaBounds alpha_bounds(const Fn& f, const std::vector<double>& zs, const std::vector<double>& xs,
                                const std::function<double(double)>& prox_of) {
  AlphaBounds b;
  for (double z : zs) {
    const double xbar = prox_of(z);
    for (double x : xs) {
      const double lhs = f(xbar) - f(x);
      const double ip = (xbar - z) * (x - xbar);
      const double tol = 1e-9 * (1 + std::abs(lhs));
      if (ip > 1e-12) {
        if (lhs - tol > 0) b.lower = std::max(b.lower, (lhs - tol) / ip);
      } else if (ip < -1e-12) {
        if (lhs - tol >= 0) b.infeasible = true;
        else b.upper = std::min(b.upper, (lhs - tol) / ip);
      } else if (lhs - tol > 0) {
        b.infeasible = true;
      }
    }
  }
  return b;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace oracle
