#include "sublevel/symbolic.hpp"

#include "sublevel/error.hpp"
#include "sublevel/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace sublevel {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero:
      return "zero";
    case Verdict::NonZero:
      return "nonzero";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ZeroTestResult zero_test(const Expr& e, const ZeroTestOptions& options) {
  if (options.trials < 1) throw DomainError("zero_test needs at least one trial");
  ZeroTestResult result;

  const Expr s = simplify(e);
  if (s.is_zero()) {
    result.verdict = Verdict::Zero;
    result.exact = true;
    return result;
  }

  // The expansion may be too large; sampling still decides in that case.
  Expr subject = s;
  try {
    const NormalForm nf = NormalForm::expand(s);
    if (nf.is_zero()) {
      result.verdict = Verdict::Zero;
      result.exact = true;
      return result;
    }
    if (nf.is_laurent_polynomial()) {
      result.verdict = Verdict::NonZero;
      result.exact = true;
      return result;
    }
    subject = nf.to_expr();
  } catch (const BudgetError&) {
  }

  const int d = std::max(1, max_variable(subject));
  Rng rng(mix_seed(options.seed, 0x2e70));
  std::vector<double> p(static_cast<std::size_t>(d));
  int used = 0;
  double worst = 0.0;
  for (int t = 0; t < options.trials; ++t) {
    for (auto& x : p) x = rng.uniform(-1.0, 1.0);
    const double v = eval_unchecked(subject, p);
    const double scale = eval_magnitude(subject, p);
    if (!std::isfinite(v) || !std::isfinite(scale)) continue;
    ++used;
    const double rel = std::abs(v) / std::max(scale, 1e-300);
    worst = std::max(worst, rel);
    if (std::abs(v) > options.tolerance * scale) {
      result.verdict = Verdict::NonZero;
      result.samples_used = used;
      result.max_relative_residual = worst;
      return result;
    }
  }
  result.samples_used = used;
  result.max_relative_residual = worst;
  result.verdict = used == 0 ? Verdict::Inconclusive : Verdict::Zero;
  return result;
}

Expr determinant(const ExprMatrix& m, std::size_t term_limit) {
  const std::size_t n = m.size();
  if (n == 0) return Expr::constant(1);
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  }
  if (n > 20) throw DomainError("determinant dimension too large");

  std::vector<std::vector<NormalForm>> entries(n);
  std::vector<std::vector<bool>> nonzero(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      entries[r].push_back(NormalForm::expand(m[r][c], term_limit));
      nonzero[r].push_back(!entries[r].back().is_zero());
    }
  }

  // Laplace expansion along rows; minor(mask) is the determinant of the last
  // popcount(mask) rows restricted to the columns in mask.
  std::unordered_map<std::uint32_t, NormalForm> memo;
  auto minor = [&](std::uint32_t mask, auto& self) -> NormalForm {
    if (mask == 0) return NormalForm::constant(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    NormalForm acc;
    acc.set_term_limit(term_limit);
    int position = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1U << c))) continue;
      if (nonzero[row][c]) {
        NormalForm sub = self(mask & ~(1U << c), self);
        if (!sub.is_zero()) {
          NormalForm term = entries[row][c] * sub;
          acc = (position % 2 == 0) ? acc + term : acc - term;
        }
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return minor((1U << n) - 1U, minor).to_expr();
}

Expr jacobian_det(std::span<const Expr> es, int dimension) {
  if (dimension < 1 || es.size() != static_cast<std::size_t>(dimension)) {
    throw DomainError("jacobian_det needs exactly d = " + std::to_string(dimension) + " expressions");
  }
  ExprMatrix m(es.size());
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (max_variable(es[k]) > dimension) throw DomainError("expression uses a variable beyond the dimension");
    for (int i = 1; i <= dimension; ++i) m[k].push_back(diff(es[k], i));
  }
  return determinant(m);
}

}  // namespace sublevel
