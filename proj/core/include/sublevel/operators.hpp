#pragma once

#include "sublevel/expr.hpp"
#include "sublevel/rng.hpp"
#include "sublevel/symbolic.hpp"
#include "sublevel/tree.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sublevel {

/// Executable form of an admissible operator: either the identity, or
///
///   L F = det[ d/dx_{rows[j]} children[k] F ]_{j,k}
///
/// with strictly increasing row indices and one child per row.
struct OperatorRecipe {
  std::vector<int> rows;
  std::vector<OperatorRecipe> children;

  static OperatorRecipe identity() { return {}; }
  static OperatorRecipe det(std::vector<int> rows, std::vector<OperatorRecipe> children);
  /// The derivative d/dx_i applied to `inner`.
  static OperatorRecipe partial(int i, OperatorRecipe inner = identity());

  bool is_identity() const noexcept { return rows.empty() && children.empty(); }

  /// Throws DomainError for malformed recipes (row count != child count, rows not
  /// strictly increasing or outside 1..d).
  void validate(int d) const;

  friend bool operator==(const OperatorRecipe&, const OperatorRecipe&) = default;
};

int compare(const OperatorRecipe& a, const OperatorRecipe& b);

/// Text form: "id" or "det[i1,...,in](R1,...,Rn)".
std::string to_string(const OperatorRecipe& r);
OperatorRecipe parse_recipe(std::string_view text);

/// (alpha, beta): identity is (1, 0); a det node sums its children's types and
/// adds the indicator of its rows to beta.
OperatorType type_of_recipe(const OperatorRecipe& r, int d);

struct ApplyOptions {
  /// Abort once an intermediate result exceeds this many expression nodes.
  std::size_t node_limit = 1'000'000;
};

/// The function L F, expanded to canonical form after every determinant.
Expr apply_recipe(const OperatorRecipe& r, const Expr& f, int d, const ApplyOptions& options = {});

/// The functions pi_1..pi_m on R^d.
struct FunctionTuple {
  int d = 0;
  std::vector<Expr> exprs;

  int m() const noexcept { return static_cast<int>(exprs.size()); }
  void validate() const;

  /// (x_1, ..., x_d, F).
  static FunctionTuple euclidean(const Expr& f, int d);
};

/// d^G pi: a leaf selects pi_i; a node is the Jacobian determinant of its
/// children's values, rows in stored child order.
Expr apply_tree(const DTree& g, const FunctionTuple& pi, const ApplyOptions& options = {});

/// The tree realizing `r` on pi = (x_1, ..., x_d, F): child k sits in slot rows[k]
/// and the remaining slots j hold the coordinate leaf j, which makes
/// apply_tree(tree_of_recipe(r)) equal to apply_recipe(r) with the same sign.
DTree tree_of_recipe(const OperatorRecipe& r, int d);

struct EquivalenceResult {
  Verdict verdict = Verdict::Inconclusive;  // Zero means the two sides agree up to sign
  bool exact = false;
  /// +1 or -1 when the sign of recipe / tree was the same at every sample where
  /// both were nonzero, 0 when undetermined or mixed.
  int observed_sign = 0;
  int sign_samples = 0;
};

/// Compares apply_recipe(r, f)^2 with apply_tree(tree_of_recipe(r), (x, f))^2.
EquivalenceResult recipe_tree_equivalence(const OperatorRecipe& r, const Expr& f, int d,
                                          const ZeroTestOptions& options = {});

/// Random valid recipe: children nest at most `max_depth` determinant levels.
OperatorRecipe random_recipe(Rng& rng, int d, int max_depth);

/// Every recipe with |beta| <= max_beta_norm up to reordering of children (which
/// only flips the sign); children are sorted by `compare`.
std::vector<OperatorRecipe> enumerate_recipes(int d, int max_beta_norm);

}  // namespace sublevel
