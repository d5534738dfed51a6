#include "sublevel/error.hpp"
#include "sublevel/expr.hpp"

#include <algorithm>
#include <utility>

namespace sublevel {
namespace {

// The helpers below take operands that are already in canonical form.

Expr canonical_power(const Expr& base, long n);

Expr canonical_sum(std::span<const Expr> terms);

Expr canonical_product(std::span<const Expr> factors) {
  Rational coefficient = 1;
  std::vector<std::pair<Expr, long>> items;
  auto push = [&](const Expr& f, auto& self) -> void {
    switch (f.kind()) {
      case Kind::Constant:
        coefficient *= f.value();
        break;
      case Kind::Product:
        for (const auto& g : f.operands()) self(g, self);
        break;
      case Kind::Power:
        items.emplace_back(f.operand(), f.exponent());
        break;
      default:
        items.emplace_back(f, 1);
    }
  };
  for (const auto& f : factors) push(f, push);
  if (coefficient == 0) return Expr::constant(0);

  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  if (coefficient != 1) out.push_back(Expr::constant(coefficient));
  for (std::size_t i = 0; i < items.size();) {
    long n = 0;
    std::size_t j = i;
    for (; j < items.size() && items[j].first == items[i].first; ++j) n += items[j].second;
    if (n == 1) {
      out.push_back(items[i].first);
    } else if (n != 0) {
      out.push_back(Expr::power(items[i].first, n));
    }
    i = j;
  }

  if (out.empty()) return Expr::constant(coefficient);
  if (out.size() == 1) return out.front();
  if (out.size() == 2 && out[0].is_constant() && out[1].kind() == Kind::Sum) {
    // c*(a + b) -> c*a + c*b
    std::vector<Expr> terms;
    terms.reserve(out[1].operands().size());
    for (const auto& t : out[1].operands()) {
      const Expr pair[] = {out[0], t};
      terms.push_back(canonical_product(pair));
    }
    return canonical_sum(terms);
  }
  return Expr::product(std::move(out));
}

// Splits a canonical term into coefficient * core.
std::pair<Rational, Expr> split_coefficient(const Expr& t) {
  if (t.kind() == Kind::Product && t.operand(0).is_constant()) {
    auto ops = t.operands();
    if (ops.size() == 2) return {ops[0].value(), ops[1]};
    return {ops[0].value(), Expr::product(std::vector<Expr>(ops.begin() + 1, ops.end()))};
  }
  return {Rational(1), t};
}

Expr canonical_sum(std::span<const Expr> terms) {
  Rational constant = 0;
  std::vector<std::pair<Expr, Rational>> items;
  auto push = [&](const Expr& t, auto& self) -> void {
    if (t.is_constant()) {
      constant += t.value();
    } else if (t.kind() == Kind::Sum) {
      for (const auto& u : t.operands()) self(u, self);
    } else {
      auto [c, core] = split_coefficient(t);
      items.emplace_back(std::move(core), std::move(c));
    }
  };
  for (const auto& t : terms) push(t, push);

  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<Expr> out;
  if (constant != 0) out.push_back(Expr::constant(constant));
  for (std::size_t i = 0; i < items.size();) {
    Rational c = 0;
    std::size_t j = i;
    for (; j < items.size() && items[j].first == items[i].first; ++j) c += items[j].second;
    if (c == 1) {
      out.push_back(items[i].first);
    } else if (c != 0) {
      const Expr pair[] = {Expr::constant(c), items[i].first};
      out.push_back(canonical_product(pair));
    }
    i = j;
  }
  if (out.empty()) return Expr::constant(0);
  if (out.size() == 1) return out.front();
  return Expr::sum(std::move(out));
}

Expr canonical_power(const Expr& base, long n) {
  if (n == 0) return Expr::constant(1);
  if (n == 1) return base;
  switch (base.kind()) {
    case Kind::Constant:
      return Expr::constant(pow(base.value(), n));
    case Kind::Power:
      return canonical_power(base.operand(), base.exponent() * n);
    case Kind::Product: {
      std::vector<Expr> factors;
      factors.reserve(base.operands().size());
      for (const auto& f : base.operands()) factors.push_back(canonical_power(f, n));
      return canonical_product(factors);
    }
    default:
      return Expr::power(base, n);
  }
}

std::vector<Expr> simplify_all(std::span<const Expr> xs) {
  std::vector<Expr> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(simplify(x));
  return out;
}

bool depends_on(const Expr& e, int index) {
  if (e.kind() == Kind::Variable) return e.index() == index;
  return std::any_of(e.operands().begin(), e.operands().end(),
                     [index](const Expr& op) { return depends_on(op, index); });
}

Expr raw_diff(const Expr& e, int i) {
  if (!depends_on(e, i)) return Expr::constant(0);
  switch (e.kind()) {
    case Kind::Constant:
      return Expr::constant(0);
    case Kind::Variable:
      return Expr::constant(1);
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) {
        if (depends_on(t, i)) terms.push_back(raw_diff(t, i));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::Product: {
      auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < ops.size(); ++k) {
        if (!depends_on(ops[k], i)) continue;
        std::vector<Expr> factors(ops.begin(), ops.end());
        factors[k] = raw_diff(ops[k], i);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::Power: {
      const long n = e.exponent();
      return Expr::product({Expr::constant(n), Expr::power(e.operand(), n - 1), raw_diff(e.operand(), i)});
    }
    case Kind::Negate:
      return Expr::negate(raw_diff(e.operand(), i));
    case Kind::Sin:
      return Expr::product({Expr::cos(e.operand()), raw_diff(e.operand(), i)});
    case Kind::Cos:
      return Expr::product({Expr::constant(-1), Expr::sin(e.operand()), raw_diff(e.operand(), i)});
    case Kind::Exp:
      return Expr::product({e, raw_diff(e.operand(), i)});
  }
  return Expr::constant(0);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Sum:
      return canonical_sum(simplify_all(e.operands()));
    case Kind::Product:
      return canonical_product(simplify_all(e.operands()));
    case Kind::Power:
      return canonical_power(simplify(e.operand()), e.exponent());
    case Kind::Negate: {
      const Expr factors[] = {Expr::constant(-1), simplify(e.operand())};
      return canonical_product(factors);
    }
    case Kind::Sin: {
      Expr a = simplify(e.operand());
      return a.is_zero() ? Expr::constant(0) : Expr::sin(std::move(a));
    }
    case Kind::Cos: {
      Expr a = simplify(e.operand());
      return a.is_zero() ? Expr::constant(1) : Expr::cos(std::move(a));
    }
    case Kind::Exp: {
      Expr a = simplify(e.operand());
      return a.is_zero() ? Expr::constant(1) : Expr::exp(std::move(a));
    }
  }
  return e;
}

Expr diff(const Expr& e, int index) {
  if (index < 1) throw DomainError("differentiation index must be >= 1");
  return simplify(raw_diff(e, index));
}

}  // namespace sublevel
