#include "sublevel/normal_form.hpp"

#include "sublevel/error.hpp"

#include <algorithm>

namespace sublevel {
namespace {

NormalForm::Monomial multiply(const NormalForm::Monomial& a, const NormalForm::Monomial& b) {
  NormalForm::Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) {
      c = 1;
    } else if (j == b.size()) {
      c = -1;
    } else {
      c = compare(a[i].first, b[j].first);
    }
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      const long n = a[i].second + b[j].second;
      if (n != 0) out.emplace_back(a[i].first, n);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool NormalForm::MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i].first, b[i].first)) return c < 0;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() < b.size();
}

NormalForm NormalForm::constant(const Rational& c) {
  NormalForm nf;
  if (c != 0) nf.terms_.emplace(Monomial{}, c);
  return nf;
}

NormalForm NormalForm::atom(const Expr& a) {
  NormalForm nf;
  nf.terms_.emplace(Monomial{{a, 1}}, Rational(1));
  return nf;
}

void NormalForm::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void NormalForm::check_budget() const {
  if (terms_.size() > term_limit_) {
    throw BudgetError("expansion exceeded " + std::to_string(term_limit_) + " terms");
  }
}

NormalForm NormalForm::operator+(const NormalForm& o) const {
  NormalForm out = *this;
  out.term_limit_ = std::min(term_limit_, o.term_limit_);
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  out.check_budget();
  return out;
}

NormalForm NormalForm::operator-(const NormalForm& o) const { return *this + o.scaled(-1); }

NormalForm NormalForm::scaled(const Rational& c) const {
  NormalForm out;
  out.term_limit_ = term_limit_;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, v * c);
  return out;
}

NormalForm NormalForm::operator*(const NormalForm& o) const {
  NormalForm out;
  out.term_limit_ = std::min(term_limit_, o.term_limit_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) out.add_term(multiply(ma, mb), ca * cb);
    out.check_budget();
  }
  return out;
}

NormalForm NormalForm::pow(long n) const {
  if (n < 0) {
    if (terms_.size() != 1) throw DomainError("negative power of a non-monomial normal form");
    const auto& [m, c] = *terms_.begin();
    Monomial inv = m;
    for (auto& [a, k] : inv) k *= n;
    NormalForm out;
    out.term_limit_ = term_limit_;
    out.terms_.emplace(std::move(inv), sublevel::pow(c, n));
    return out;
  }
  NormalForm result = constant(1);
  result.term_limit_ = term_limit_;
  NormalForm base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool NormalForm::is_laurent_polynomial() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [a, k] : m) {
      if (a.kind() != Kind::Variable) return false;
    }
  }
  return true;
}

long NormalForm::total_degree() const {
  long best = 0;
  for (const auto& [m, c] : terms_) {
    long deg = 0;
    for (const auto& [a, k] : m) deg += k;
    best = std::max(best, deg);
  }
  return best;
}

Expr NormalForm::to_expr() const {
  std::vector<Expr> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<Expr> factors;
    factors.reserve(m.size() + 1);
    factors.push_back(Expr::constant(c));
    for (const auto& [a, k] : m) factors.push_back(k == 1 ? a : Expr::power(a, k));
    terms.push_back(Expr::product(std::move(factors)));
  }
  return simplify(Expr::sum(std::move(terms)));
}

NormalForm NormalForm::expand(const Expr& e, std::size_t term_limit) {
  NormalForm out;
  switch (e.kind()) {
    case Kind::Constant:
      out = constant(e.value());
      break;
    case Kind::Variable:
      out = atom(e);
      break;
    case Kind::Sum:
      out.term_limit_ = term_limit;
      for (const auto& t : e.operands()) out = out + expand(t, term_limit);
      break;
    case Kind::Product:
      out = constant(1);
      out.term_limit_ = term_limit;
      for (const auto& f : e.operands()) {
        out = out * expand(f, term_limit);
        if (out.is_zero()) break;
      }
      break;
    case Kind::Negate:
      out = expand(e.operand(), term_limit).scaled(-1);
      break;
    case Kind::Power: {
      NormalForm base = expand(e.operand(), term_limit);
      const long n = e.exponent();
      if (n >= 0 || base.term_count() == 1) {
        out = base.pow(n);
      } else if (base.is_zero()) {
        throw DomainError("division by zero: 0 raised to a negative power");
      } else {
        out = atom(Expr::power(base.to_expr(), -1)).pow(-n);
      }
      break;
    }
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp: {
      const Expr arg = expand(e.operand(), term_limit).to_expr();
      if (arg.is_zero()) {
        out = constant(e.kind() == Kind::Sin ? 0 : 1);
      } else if (e.kind() == Kind::Sin) {
        out = atom(Expr::sin(arg));
      } else if (e.kind() == Kind::Cos) {
        out = atom(Expr::cos(arg));
      } else {
        out = atom(Expr::exp(arg));
      }
      break;
    }
  }
  out.term_limit_ = term_limit;
  out.check_budget();
  return out;
}

Expr normalize(const Expr& e) { return NormalForm::expand(e).to_expr(); }

}  // namespace sublevel
