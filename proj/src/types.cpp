#include "proxcvx/types.hpp"

#include <cmath>

#include <fmt/format.h>

namespace proxcvx {

Box::Box(std::vector<Interval> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 2) {
    throw InvalidArgument("box dimension must be 1 or 2");
  }
  for (const auto& a : axes_) {
    if (std::isnan(a.lo) || std::isnan(a.hi) || a.empty()) {
      throw InvalidArgument(fmt::format("box axis [{}, {}] is empty", a.lo, a.hi));
    }
    if (a.lo == kInf || a.hi == -kInf) {
      throw InvalidArgument("box axis has no finite points");
    }
  }
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != axes_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!axes_[i].contains(x[i])) return false;
  }
  return true;
}

bool Box::bounded() const {
  for (const auto& a : axes_) {
    if (!a.bounded()) return false;
  }
  return true;
}

Box Box::intersect(const Box& o) const {
  if (o.dimension() != dimension()) {
    throw InvalidArgument("box dimension mismatch");
  }
  Box out;
  out.axes_.reserve(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) out.axes_.push_back(axes_[i].intersect(o.axes_[i]));
  return out;
}

bool Box::empty() const {
  if (axes_.empty()) return true;
  for (const auto& a : axes_) {
    if (a.empty()) return true;
  }
  return false;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

Point subtract(std::span<const double> a, std::span<const double> b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::string format_point(std::span<const double> x, char sep) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += sep;
    out += fmt::format("{}", x[i]);
  }
  return out;
}

}  // namespace proxcvx
