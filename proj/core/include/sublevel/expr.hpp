#pragma once

#include "sublevel/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sublevel {

/// Node kinds, listed in canonical order.
enum class Kind : std::uint8_t { Constant, Variable, Sum, Product, Power, Negate, Sin, Cos, Exp };

/// Immutable symbolic expression over the variables x1..xd.
///
/// Copies share the underlying node. Builders do not simplify; call
/// `simplify` to obtain the canonical form.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(Rational value);
  static Expr constant(long long value);
  static Expr variable(int index);  // 1-based
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, long exponent);
  static Expr negate(Expr arg);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  static Expr exp(Expr arg);

  Kind kind() const noexcept;
  const Rational& value() const;  // Constant only
  int index() const;              // Variable only
  long exponent() const;          // Power only
  std::span<const Expr> operands() const noexcept;
  const Expr& operand(std::size_t i = 0) const { return operands()[i]; }

  /// Number of nodes in the (unshared) tree.
  std::size_t node_count() const noexcept;
  std::size_t hash() const noexcept;

  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::weak_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Kind kind, std::vector<Expr> operands);

  std::shared_ptr<const Node> node_;
};

/// Three-way structural comparison: kind, then variable index / value, then operands.
int compare(const Expr& a, const Expr& b);

// Raw builders, no simplification.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Largest variable index occurring in `e`, 0 if none.
int max_variable(const Expr& e);

/// True when `e` contains no sin, cos or exp node.
bool is_algebraic(const Expr& e);

/// Parse the expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor | '/' RATIONAL)*
///   factor := base ('^' INTEGER)?
///   base   := RATIONAL | VAR | '(' expr ')' | ('sin'|'cos'|'exp') '(' expr ')' | '-' factor
///   VAR    := 'x' INTEGER
///
/// Exponents may carry a leading '-'. Throws ParseError on malformed text
/// and on variables beyond `dimension`.
Expr parse(std::string_view text, int dimension);

/// Prints in the same grammar; `parse(to_string(e))` simplifies back to `simplify(e)`.
std::string to_string(const Expr& e);

/// Canonical form: flattened sums and products, folded constants, like terms
/// collected, equal bases merged into powers, 0/1 identities applied. Idempotent.
/// Trigonometric identities are not applied.
Expr simplify(const Expr& e);

/// Exact partial derivative with respect to x_index, simplified.
Expr diff(const Expr& e, int index);

/// Double evaluation. Throws EvalError on a non-finite result and DomainError
/// when a variable index exceeds the point's length.
double eval(const Expr& e, std::span<const double> point);

/// Same as `eval` but returns NaN/inf instead of throwing.
double eval_unchecked(const Expr& e, std::span<const double> point);

/// Evaluation of the absolute-value companion of `e` (every sum replaced by the
/// sum of absolute values); the magnitude scale against which cancellation is judged.
double eval_magnitude(const Expr& e, std::span<const double> point);

}  // namespace sublevel
