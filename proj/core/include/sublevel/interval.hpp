#pragma once

#include "sublevel/expr.hpp"

#include <cmath>
#include <limits>
#include <span>

namespace sublevel {

/// Closed interval [lo, hi] with outward-widened endpoints. Infinite endpoints
/// are allowed and mean "unbounded".
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  static Interval entire() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool is_valid() const { return !(std::isnan(lo) || std::isnan(hi)) && lo <= hi; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  /// min |x| over the interval.
  double mignitude() const { return contains_zero() ? 0.0 : std::min(std::abs(lo), std::abs(hi)); }
  /// max |x| over the interval.
  double magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }
};

Interval operator+(Interval a, Interval b);
Interval operator-(Interval a, Interval b);
Interval operator-(Interval a);
Interval operator*(Interval a, Interval b);
Interval pow(Interval a, long n);
Interval sin(Interval a);
Interval cos(Interval a);
Interval exp(Interval a);

/// Natural interval extension of `e` over the box `domain` (one interval per variable).
/// The result encloses the range of `e` over the box up to floating rounding.
Interval eval_interval(const Expr& e, std::span<const Interval> domain);

}  // namespace sublevel
