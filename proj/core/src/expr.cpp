#include "sublevel/expr.hpp"

#include "sublevel/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace sublevel {

struct Expr::Node {
  Kind kind = Kind::Constant;
  Rational value;
  int index = 0;
  long exponent = 0;
  std::vector<Expr> operands;
  std::size_t hash = 0;
  std::size_t count = 1;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Expr::Expr() : Expr(constant(0)) {}

Expr Expr::make(Kind kind, std::vector<Expr> operands) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  std::size_t h = static_cast<std::size_t>(kind) * 0x100000001B3ULL;
  std::size_t count = 1;
  for (const auto& op : operands) {
    h = combine(h, op.hash());
    count += op.node_count();
  }
  node->operands = std::move(operands);
  node->hash = h;
  node->count = count;
  return Expr(std::move(node));
}

Expr Expr::constant(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->hash = combine(0xC0, std::hash<double>{}(to_double(value)));
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::constant(long long value) { return constant(Rational(value)); }

Expr Expr::variable(int index) {
  if (index < 1) throw DomainError("variable index must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->index = index;
  node->hash = combine(0x7A, static_cast<std::size_t>(index));
  return Expr(std::move(node));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return constant(0);
  if (terms.size() == 1) return terms.front();
  return make(Kind::Sum, std::move(terms));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return constant(1);
  if (factors.size() == 1) return factors.front();
  return make(Kind::Product, std::move(factors));
}

Expr Expr::power(Expr base, long exponent) {
  Expr e = make(Kind::Power, {std::move(base)});
  auto& node = const_cast<Node&>(*e.node_);
  node.exponent = exponent;
  node.hash = combine(node.hash, static_cast<std::size_t>(exponent));
  return e;
}

Expr Expr::negate(Expr arg) { return make(Kind::Negate, {std::move(arg)}); }
Expr Expr::sin(Expr arg) { return make(Kind::Sin, {std::move(arg)}); }
Expr Expr::cos(Expr arg) { return make(Kind::Cos, {std::move(arg)}); }
Expr Expr::exp(Expr arg) { return make(Kind::Exp, {std::move(arg)}); }

Kind Expr::kind() const noexcept { return node_->kind; }

const Rational& Expr::value() const {
  if (node_->kind != Kind::Constant) throw DomainError("value() on a non-constant expression");
  return node_->value;
}

int Expr::index() const {
  if (node_->kind != Kind::Variable) throw DomainError("index() on a non-variable expression");
  return node_->index;
}

long Expr::exponent() const {
  if (node_->kind != Kind::Power) throw DomainError("exponent() on a non-power expression");
  return node_->exponent;
}

std::span<const Expr> Expr::operands() const noexcept { return node_->operands; }
std::size_t Expr::node_count() const noexcept { return node_->count; }
std::size_t Expr::hash() const noexcept { return node_->hash; }

bool Expr::is_zero() const { return node_->kind == Kind::Constant && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == Kind::Constant && node_->value == 1; }

int compare(const Expr& a, const Expr& b) {
  if (&a == &b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant:
      if (a.value() == b.value()) return 0;
      return a.value() < b.value() ? -1 : 1;
    case Kind::Variable:
      if (a.index() == b.index()) return 0;
      return a.index() < b.index() ? -1 : 1;
    case Kind::Power: {
      if (int c = compare(a.operand(), b.operand())) return c;
      if (a.exponent() == b.exponent()) return 0;
      return a.exponent() < b.exponent() ? -1 : 1;
    }
    default: {
      const auto xs = a.operands();
      const auto ys = b.operands();
      const std::size_t n = std::min(xs.size(), ys.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(xs[i], ys[i])) return c;
      }
      if (xs.size() == ys.size()) return 0;
      return xs.size() < ys.size() ? -1 : 1;
    }
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.node_count() != b.node_count()) return false;
  return compare(a, b) == 0;
}

std::weak_ordering operator<=>(const Expr& a, const Expr& b) {
  const int c = compare(a, b);
  if (c < 0) return std::weak_ordering::less;
  if (c > 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::negate(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

int max_variable(const Expr& e) {
  if (e.kind() == Kind::Variable) return e.index();
  int m = 0;
  for (const auto& op : e.operands()) m = std::max(m, max_variable(op));
  return m;
}

bool is_algebraic(const Expr& e) {
  switch (e.kind()) {
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
      return false;
    default:
      return std::all_of(e.operands().begin(), e.operands().end(),
                         [](const Expr& op) { return is_algebraic(op); });
  }
}

double eval_unchecked(const Expr& e, std::span<const double> point) {
  switch (e.kind()) {
    case Kind::Constant:
      return to_double(e.value());
    case Kind::Variable: {
      const auto i = static_cast<std::size_t>(e.index());
      if (i > point.size()) {
        throw DomainError("variable x" + std::to_string(i) + " exceeds point dimension " +
                          std::to_string(point.size()));
      }
      return point[i - 1];
    }
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& op : e.operands()) s += eval_unchecked(op, point);
      return s;
    }
    case Kind::Product: {
      double p = 1.0;
      for (const auto& op : e.operands()) p *= eval_unchecked(op, point);
      return p;
    }
    case Kind::Power: {
      const double base = eval_unchecked(e.operand(), point);
      const long n = e.exponent();
      if (n == 2) return base * base;
      return std::pow(base, static_cast<double>(n));
    }
    case Kind::Negate:
      return -eval_unchecked(e.operand(), point);
    case Kind::Sin:
      return std::sin(eval_unchecked(e.operand(), point));
    case Kind::Cos:
      return std::cos(eval_unchecked(e.operand(), point));
    case Kind::Exp:
      return std::exp(eval_unchecked(e.operand(), point));
  }
  return std::nan("");
}

double eval(const Expr& e, std::span<const double> point) {
  const double v = eval_unchecked(e, point);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "evaluation failure: " << v << " for " << to_string(e);
    throw EvalError(msg.str());
  }
  return v;
}

double eval_magnitude(const Expr& e, std::span<const double> point) {
  switch (e.kind()) {
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& op : e.operands()) s += eval_magnitude(op, point);
      return s;
    }
    case Kind::Product: {
      double p = 1.0;
      for (const auto& op : e.operands()) p *= eval_magnitude(op, point);
      return p;
    }
    case Kind::Power:
      return std::pow(eval_magnitude(e.operand(), point), static_cast<double>(e.exponent()));
    case Kind::Negate:
      return eval_magnitude(e.operand(), point);
    default:
      return std::abs(eval_unchecked(e, point));
  }
}

}  // namespace sublevel
