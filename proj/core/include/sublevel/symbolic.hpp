#pragma once

#include "sublevel/expr.hpp"
#include "sublevel/normal_form.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sublevel {

enum class Verdict { Zero, NonZero, Inconclusive };

std::string_view to_string(Verdict v);

struct ZeroTestResult {
  Verdict verdict = Verdict::Inconclusive;
  /// True when decided by exact normal-form expansion rather than sampling.
  bool exact = false;
  int samples_used = 0;
  /// Largest |e(p)| / magnitude(p) over the sampled points (0 for exact verdicts).
  double max_relative_residual = 0.0;
};

struct ZeroTestOptions {
  int trials = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
};

/// Decides whether `e` vanishes identically.
///
/// Exact when the canonical form is the constant 0 or the expansion is a
/// polynomial in the variables. Otherwise samples `trials` seeded points
/// uniformly in [-1, 1]^d and declares zero when every |e(p)| is within
/// `tolerance` of the sampled magnitude scale (a probabilistic verdict).
ZeroTestResult zero_test(const Expr& e, const ZeroTestOptions& options = {});

/// Square matrix of expressions, row-major.
using ExprMatrix = std::vector<std::vector<Expr>>;

/// Exact symbolic determinant in expanded canonical form.
/// Throws BudgetError when the expansion exceeds `term_limit` terms.
Expr determinant(const ExprMatrix& m, std::size_t term_limit = NormalForm::kDefaultTermLimit);

/// det(d e_k / d x_i) with row k the gradient of es[k]; requires es.size() == dimension.
Expr jacobian_det(std::span<const Expr> es, int dimension);

}  // namespace sublevel
