#include "sublevel/interval.hpp"

#include "sublevel/error.hpp"

#include <algorithm>
#include <numbers>

namespace sublevel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval widen(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) return Interval::entire();
  return {std::nextafter(lo, -kInf), std::nextafter(hi, kInf)};
}

// Product of endpoints with 0 * inf treated as 0.
double mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

Interval operator+(Interval a, Interval b) { return widen(a.lo + b.lo, a.hi + b.hi); }
Interval operator-(Interval a, Interval b) { return widen(a.lo - b.hi, a.hi - b.lo); }
Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

Interval operator*(Interval a, Interval b) {
  const double p[] = {mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
  return widen(*std::min_element(std::begin(p), std::end(p)), *std::max_element(std::begin(p), std::end(p)));
}

Interval pow(Interval a, long n) {
  if (n == 0) return Interval::point(1.0);
  if (n < 0) {
    if (a.contains_zero()) return Interval::entire();
    const Interval inv = widen(1.0 / a.hi, 1.0 / a.lo);
    return pow(inv, -n);
  }
  const double k = static_cast<double>(n);
  if (n % 2 == 1) return widen(std::pow(a.lo, k), std::pow(a.hi, k));
  if (a.lo >= 0.0) return widen(std::pow(a.lo, k), std::pow(a.hi, k));
  if (a.hi <= 0.0) return widen(std::pow(a.hi, k), std::pow(a.lo, k));
  return {0.0, std::nextafter(std::pow(std::max(-a.lo, a.hi), k), kInf)};
}

Interval sin(Interval a) {
  if (!a.is_finite() || a.width() >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
  double lo = std::min(std::sin(a.lo), std::sin(a.hi));
  double hi = std::max(std::sin(a.lo), std::sin(a.hi));
  // Extrema at pi/2 + k*pi inside the interval.
  const double half_pi = 0.5 * std::numbers::pi;
  const double first = std::ceil((a.lo - half_pi) / std::numbers::pi);
  for (double k = first; half_pi + k * std::numbers::pi <= a.hi; k += 1.0) {
    if (std::fmod(std::abs(k), 2.0) == 0.0) {
      hi = 1.0;
    } else {
      lo = -1.0;
    }
  }
  const Interval out = widen(lo, hi);
  return {std::max(out.lo, -1.0), std::min(out.hi, 1.0)};
}

Interval cos(Interval a) {
  const double shift = 0.5 * std::numbers::pi;
  return sin(Interval{a.lo + shift, a.hi + shift} + Interval{-1e-15, 1e-15});
}

Interval exp(Interval a) {
  const Interval out = widen(std::exp(a.lo), std::exp(a.hi));
  return {std::max(out.lo, 0.0), out.hi};
}

Interval eval_interval(const Expr& e, std::span<const Interval> domain) {
  switch (e.kind()) {
    case Kind::Constant: {
      const double v = to_double(e.value());
      return is_integer(e.value()) && std::abs(v) < 0x1.0p53 ? Interval::point(v) : widen(v, v);
    }
    case Kind::Variable: {
      const auto i = static_cast<std::size_t>(e.index());
      if (i > domain.size()) throw DomainError("variable exceeds box dimension");
      return domain[i - 1];
    }
    case Kind::Sum: {
      Interval s = Interval::point(0.0);
      for (const auto& op : e.operands()) s = s + eval_interval(op, domain);
      return s;
    }
    case Kind::Product: {
      Interval p = Interval::point(1.0);
      for (const auto& op : e.operands()) p = p * eval_interval(op, domain);
      return p;
    }
    case Kind::Power:
      return pow(eval_interval(e.operand(), domain), e.exponent());
    case Kind::Negate:
      return -eval_interval(e.operand(), domain);
    case Kind::Sin:
      return sin(eval_interval(e.operand(), domain));
    case Kind::Cos:
      return cos(eval_interval(e.operand(), domain));
    case Kind::Exp:
      return exp(eval_interval(e.operand(), domain));
  }
  return Interval::entire();
}

}  // namespace sublevel
