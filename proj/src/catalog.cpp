#include "proxcvx/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace proxcvx {

bool Piece::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !includes_lo()) return false;
  if (x == hi && !includes_hi()) return false;
  return true;
}

double Piece::formula(double x) const {
  const auto c = [&](std::size_t i) { return i < coeffs.size() ? coeffs[i] : 0.0; };
  switch (kind) {
    case PieceKind::kPoly:
      return c(0) + x * (c(1) + x * (c(2) + x * c(3)));
    case PieceKind::kLog: {
      const double arg = 1.0 + c(3) * x;
      if (!(arg > 0.0)) return kInf;
      return c(0) + c(1) * x + c(2) * std::log(arg);
    }
  }
  return kInf;
}

double Piece::slope(double x) const {
  const auto c = [&](std::size_t i) { return i < coeffs.size() ? coeffs[i] : 0.0; };
  switch (kind) {
    case PieceKind::kPoly:
      return c(1) + x * (2.0 * c(2) + 3.0 * x * c(3));
    case PieceKind::kLog: {
      const double arg = 1.0 + c(3) * x;
      if (!(arg > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      return c(1) + c(2) * c(3) / arg;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

void validate_piece(const Piece& p) {
  if (std::isnan(p.lo) || std::isnan(p.hi) || !(p.lo < p.hi)) {
    throw InvalidArgument(fmt::format("piece interval ({}, {}) must satisfy lo < hi", p.lo, p.hi));
  }
  if (p.coeffs.size() > 4) {
    throw InvalidArgument("too many piece coefficients");
  }
  for (double c : p.coeffs) {
    if (!std::isfinite(c)) throw InvalidArgument("piece coefficients must be finite");
  }
}

Continuity classify(double left, double right, double value) {
  const double tol = 1e-12 * (1.0 + std::abs(value));
  if (std::abs(left - value) <= tol && std::abs(right - value) <= tol) return Continuity::kContinuous;
  if (value <= std::min(left, right) + tol) return Continuity::kLsc;
  return Continuity::kNotLsc;
}

}  // namespace

Univariate::Univariate(std::vector<Piece> pieces, std::vector<PointException> exceptions)
    : pieces_(std::move(pieces)), exceptions_(std::move(exceptions)) {
  if (pieces_.empty()) throw InvalidArgument("a function needs at least one piece");
  for (const auto& p : pieces_) validate_piece(p);
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const Piece& a = pieces_[i];
    const Piece& b = pieces_[i + 1];
    if (a.hi != b.lo) {
      throw InvalidArgument(fmt::format("pieces leave a gap or overlap between {} and {}", a.hi, b.lo));
    }
    if (a.includes_hi() == b.includes_lo()) {
      throw InvalidArgument(fmt::format("boundary {} must belong to exactly one piece", a.hi));
    }
  }
  const Piece& first = pieces_.front();
  const Piece& last = pieces_.back();
  if (std::isfinite(first.lo) && !first.includes_lo()) {
    throw InvalidArgument("finite lower end of the domain must be closed");
  }
  if (std::isfinite(last.hi) && !last.includes_hi()) {
    throw InvalidArgument("finite upper end of the domain must be closed");
  }
  domain_ = {first.lo, last.hi};

  std::sort(exceptions_.begin(), exceptions_.end(),
            [](const PointException& a, const PointException& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < exceptions_.size(); ++i) {
    const auto& e = exceptions_[i];
    if (!std::isfinite(e.x) || !std::isfinite(e.value) || !domain_.contains(e.x)) {
      throw InvalidArgument(fmt::format("exception point {} must be finite and inside the domain", e.x));
    }
    if (i && exceptions_[i - 1].x == e.x) throw InvalidArgument("duplicate exception point");
  }

  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) xs.push_back(pieces_[i].hi);
  for (const auto& e : exceptions_) xs.push_back(e.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    Breakpoint bp;
    bp.x = x;
    bp.value = (*this)(x);
    bp.left_limit = x > domain_.lo ? left_limit(x) : bp.value;
    bp.right_limit = x < domain_.hi ? right_limit(x) : bp.value;
    bp.continuity = classify(bp.left_limit, bp.right_limit, bp.value);
    breakpoints_.push_back(bp);
  }
}

const Piece* Univariate::piece_at(double x) const {
  // first piece whose hi is >= x
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Piece& p, double v) { return p.hi < v; });
  for (; it != pieces_.end() && it->lo <= x; ++it) {
    if (it->contains(x)) return &*it;
  }
  return nullptr;
}

double Univariate::operator()(double x) const {
  if (std::isnan(x)) return kInf;
  for (const auto& e : exceptions_) {
    if (e.x == x) return e.value;
  }
  const Piece* p = piece_at(x);
  return p ? p->formula(x) : kInf;
}

double Univariate::left_limit(double x) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Piece& p, double v) { return p.hi < v; });
  if (it == pieces_.end() || it->lo >= x) return kInf;
  return it->formula(x);
}

double Univariate::right_limit(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.hi; });
  if (it == pieces_.end() || it->lo > x) return kInf;
  return it->formula(x);
}

Univariate Univariate::scaled(double factor) const {
  if (!std::isfinite(factor) || factor <= 0.0) throw InvalidArgument("scale factor must be positive");
  std::vector<Piece> pieces = pieces_;
  for (auto& p : pieces) {
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      // the log argument coefficient is not a multiplier
      if (p.kind == PieceKind::kLog && i == 3) continue;
      p.coeffs[i] *= factor;
    }
  }
  std::vector<PointException> ex = exceptions_;
  for (auto& e : ex) e.value *= factor;
  return Univariate(std::move(pieces), std::move(ex));
}

Box FunctionSpec::domain() const {
  std::vector<Interval> axes;
  for (const auto& t : terms) axes.push_back(t.domain());
  return Box(std::move(axes));
}

double evaluate(const FunctionSpec& f, std::span<const double> x) {
  if (x.size() != f.dimension()) {
    throw InvalidArgument(fmt::format("point has dimension {}, function has {}", x.size(), f.dimension()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = f.terms[i](x[i]);
    if (v == kInf) return kInf;
    s += v;
  }
  return s;
}

namespace {

Piece poly(double lo, double hi, Closure c, std::vector<double> coeffs) {
  return Piece{lo, hi, c, PieceKind::kPoly, std::move(coeffs)};
}

int integer_param(const std::map<std::string, double>& params, const std::string& name,
                  const std::string& fn, int min_value, int fallback) {
  auto it = params.find(name);
  if (it == params.end()) return fallback;
  const double v = it->second;
  if (!std::isfinite(v) || v != std::floor(v) || v < min_value) {
    throw InvalidArgument(fmt::format("{}: parameter {} must be an integer >= {}, got {}", fn, name, min_value, v));
  }
  return static_cast<int>(v);
}

void reject_params(const std::map<std::string, double>& params, const std::string& fn,
                   std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end()) {
      throw InvalidArgument(fmt::format("{} does not take parameter {}", fn, k));
    }
  }
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"negquad", "staircase", "logaffine", "cubic_shifted", "negcubic",
          "quad2d",  "abs",       "halfsquare", "indicator_spike"};
}

FunctionSpec builtin(const std::string& name, const std::map<std::string, double>& params) {
  FunctionSpec f;
  f.id = name;
  if (name == "negquad") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(0.0, 1.0, Closure::kClosed, {0.0, -1.0, -1.0})});
    f.closed_form_prox = "quadratic";
  } else if (name == "staircase") {
    reject_params(params, name, {"n"});
    const int n = integer_param(params, "n", name, 3, 3);
    std::vector<Piece> pieces{poly(1.0, 2.0, Closure::kClosed, {1.0, 0.0, 0.0, -1.0})};
    for (int k = 2; k <= n - 1; ++k) {
      pieces.push_back(poly(k, k + 1.0, Closure::kRightClosed, {1.0 - k, 0.0, 0.0, -1.0}));
    }
    f.terms.emplace_back(std::move(pieces));
    f.id = fmt::format("staircase({})", n);
  } else if (name == "logaffine") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{Piece{1.0, 2.0, Closure::kClosed, PieceKind::kLog, {0.0, 5.0, 1.0, 10.0}}});
  } else if (name == "cubic_shifted") {
    reject_params(params, name, {"n"});
    const int n = integer_param(params, "n", name, 1, 3);
    f.terms.emplace_back(std::vector{poly(-n, kInf, Closure::kLeftClosed, {0.0, 0.0, 0.0, 1.0})});
    f.id = fmt::format("cubic_shifted({})", n);
  } else if (name == "negcubic") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(-kInf, kInf, Closure::kOpen, {0.0, 0.0, 0.0, -1.0})});
  } else if (name == "quad2d") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(0.0, 2.0, Closure::kClosed, {0.0, -1.0, -1.0})});
    f.terms.emplace_back(std::vector{poly(-kInf, kInf, Closure::kOpen, {0.0, 0.0, 1.0})});
    f.closed_form_prox = "quadratic";
  } else if (name == "abs") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(-kInf, 0.0, Closure::kOpen, {0.0, -1.0}),
                                     poly(0.0, kInf, Closure::kLeftClosed, {0.0, 1.0})});
    f.closed_form_prox = "abs";
  } else if (name == "halfsquare") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(-kInf, kInf, Closure::kOpen, {0.0, 0.0, 0.5})});
    f.closed_form_prox = "quadratic";
  } else if (name == "indicator_spike") {
    reject_params(params, name, {});
    f.terms.emplace_back(std::vector{poly(-kInf, kInf, Closure::kOpen, {0.0})},
                         std::vector{PointException{0.0, 1.0}});
  } else {
    throw InvalidArgument(fmt::format("unknown builtin function '{}'", name));
  }
  return f;
}

FunctionSpec scaled(const FunctionSpec& f, double factor) {
  FunctionSpec out = f;
  out.id = fmt::format("{}*{}", factor, f.id);
  for (auto& t : out.terms) t = t.scaled(factor);
  return out;
}

void GridSpec::validate() const {
  if (points_per_coordinate < 3) throw InvalidArgument("grid needs at least 3 points per coordinate");
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
    throw InvalidArgument("grid window radius must be positive");
  }
  if (expansion_cap < 1) throw InvalidArgument("grid expansion cap must be positive");
}

Interval sampling_window(const Interval& axis, double radius) {
  if (axis.bounded()) return axis;
  if (axis.lo > -kInf) return {axis.lo, axis.lo + 2.0 * radius};
  if (axis.hi < kInf) return {axis.hi - 2.0 * radius, axis.hi};
  return {-radius, radius};
}

std::vector<double> axis_samples(const Univariate& f, const Interval& axis, const GridSpec& grid) {
  grid.validate();
  const Interval w = sampling_window(axis.intersect(f.domain()), grid.window_radius);
  if (w.empty()) return {};
  std::vector<double> xs;
  const int n = grid.points_per_coordinate;
  if (w.lo == w.hi) {
    xs.push_back(w.lo);
  } else {
    xs.reserve(n + f.breakpoints().size());
    for (int i = 0; i < n; ++i) {
      xs.push_back(i == n - 1 ? w.hi : w.lo + (w.hi - w.lo) * i / (n - 1));
    }
  }
  if (grid.include_breakpoints) {
    for (const auto& bp : f.breakpoints()) {
      if (w.contains(bp.x)) xs.push_back(bp.x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<Point> sample_points(const FunctionSpec& f, const Box& set, const GridSpec& grid) {
  if (set.dimension() != f.dimension()) throw InvalidArgument("set and function dimensions differ");
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < f.dimension(); ++i) axes.push_back(axis_samples(f.terms[i], set[i], grid));
  std::vector<Point> out;
  if (axes.size() == 1) {
    for (double x : axes[0]) out.push_back({x});
  } else {
    for (double a : axes[0]) {
      for (double b : axes[1]) out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace proxcvx
