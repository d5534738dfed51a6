#pragma once

#include "sublevel/expr.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace sublevel {

/// Fully expanded sum of rational multiples of monomials over atoms.
///
/// Atoms are variables, sin/cos/exp nodes (arguments themselves normalized) and
/// negative powers of non-monomial subexpressions. When every atom is a variable
/// the normal form is an exact (Laurent) polynomial and equality is decided exactly.
class NormalForm {
 public:
  using Monomial = std::vector<std::pair<Expr, long>>;  // sorted by atom, nonzero exponents

  struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
  };
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  NormalForm() = default;
  static NormalForm constant(const Rational& c);
  static NormalForm atom(const Expr& a);

  /// Expands `e`; throws BudgetError once more than `term_limit` terms appear.
  static NormalForm expand(const Expr& e, std::size_t term_limit = kDefaultTermLimit);

  NormalForm operator+(const NormalForm& o) const;
  NormalForm operator-(const NormalForm& o) const;
  NormalForm operator*(const NormalForm& o) const;
  NormalForm pow(long n) const;
  NormalForm scaled(const Rational& c) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }

  /// True when all atoms are variables.
  bool is_laurent_polynomial() const;

  /// Largest total degree over variable atoms (other atoms counted with degree 1).
  long total_degree() const;

  /// Canonical expression for this normal form.
  Expr to_expr() const;

  void set_term_limit(std::size_t limit) noexcept { term_limit_ = limit; }

  static constexpr std::size_t kDefaultTermLimit = 200000;

 private:
  void add_term(const Monomial& m, const Rational& c);
  void check_budget() const;

  Terms terms_;
  std::size_t term_limit_ = kDefaultTermLimit;
};

/// simplify(expand(e)): the fully expanded canonical form.
Expr normalize(const Expr& e);

}  // namespace sublevel
