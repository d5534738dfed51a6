#include "sublevel/operators.hpp"

#include "sublevel/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace sublevel {

OperatorRecipe OperatorRecipe::det(std::vector<int> rows, std::vector<OperatorRecipe> children) {
  OperatorRecipe r;
  r.rows = std::move(rows);
  r.children = std::move(children);
  return r;
}

OperatorRecipe OperatorRecipe::partial(int i, OperatorRecipe inner) { return det({i}, {std::move(inner)}); }

void OperatorRecipe::validate(int d) const {
  if (is_identity()) return;
  if (rows.size() != children.size()) {
    throw DomainError("malformed recipe: " + std::to_string(rows.size()) + " rows but " +
                      std::to_string(children.size()) + " children");
  }
  if (rows.empty() || static_cast<int>(rows.size()) > d) throw DomainError("malformed recipe: need 1..d rows");
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j] < 1 || rows[j] > d) throw DomainError("malformed recipe: row index outside 1..d");
    if (j > 0 && rows[j] <= rows[j - 1]) throw DomainError("malformed recipe: rows must be strictly increasing");
  }
  for (const auto& c : children) c.validate(d);
}

int compare(const OperatorRecipe& a, const OperatorRecipe& b) {
  if (a.is_identity() != b.is_identity()) return a.is_identity() ? -1 : 1;
  if (a.rows != b.rows) return a.rows < b.rows ? -1 : 1;
  const std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a.children[i], b.children[i])) return c;
  }
  if (a.children.size() == b.children.size()) return 0;
  return a.children.size() < b.children.size() ? -1 : 1;
}

std::string to_string(const OperatorRecipe& r) {
  if (r.is_identity()) return "id";
  std::string out = "det[";
  for (std::size_t j = 0; j < r.rows.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(r.rows[j]);
  }
  out += "](";
  for (std::size_t k = 0; k < r.children.size(); ++k) {
    if (k) out += ',';
    out += to_string(r.children[k]);
  }
  out += ')';
  return out;
}

namespace {

class RecipeParser {
 public:
  explicit RecipeParser(std::string_view text) : text_(text) {}

  OperatorRecipe run() {
    OperatorRecipe r = recipe();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing characters in recipe", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view word) {
    skip();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  void expect(char c) {
    if (!accept(std::string_view(&c, 1))) throw ParseError(std::string("expected '") + c + "' in recipe", pos_);
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    int v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000) throw ParseError("row index too large", start);
    }
    if (pos_ == start) throw ParseError("expected a row index", pos_);
    return v;
  }

  OperatorRecipe recipe() {
    if (accept("id")) return OperatorRecipe::identity();
    if (!accept("det")) throw ParseError("expected 'id' or 'det'", pos_);
    expect('[');
    std::vector<int> rows{integer()};
    while (accept(",")) rows.push_back(integer());
    expect(']');
    expect('(');
    std::vector<OperatorRecipe> children{recipe()};
    while (accept(",")) children.push_back(recipe());
    expect(')');
    if (rows.size() != children.size()) {
      throw ParseError("recipe has " + std::to_string(rows.size()) + " rows but " +
                           std::to_string(children.size()) + " children",
                       pos_);
    }
    return OperatorRecipe::det(std::move(rows), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void check_size(const Expr& e, const ApplyOptions& options) {
  if (e.node_count() > options.node_limit) {
    throw BudgetError("intermediate expression has " + std::to_string(e.node_count()) + " nodes, above the limit of " +
                      std::to_string(options.node_limit));
  }
}

}  // namespace

OperatorRecipe parse_recipe(std::string_view text) { return RecipeParser(text).run(); }

OperatorType type_of_recipe(const OperatorRecipe& r, int d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  r.validate(d);
  OperatorType t;
  t.beta.assign(static_cast<std::size_t>(d), 0);
  if (r.is_identity()) return t;
  t.alpha = 0;
  for (const auto& c : r.children) {
    const OperatorType ct = type_of_recipe(c, d);
    t.alpha += ct.alpha;
    for (int i = 0; i < d; ++i) t.beta[static_cast<std::size_t>(i)] += ct.beta[static_cast<std::size_t>(i)];
  }
  for (int i : r.rows) ++t.beta[static_cast<std::size_t>(i - 1)];
  return t;
}

Expr apply_recipe(const OperatorRecipe& r, const Expr& f, int d, const ApplyOptions& options) {
  r.validate(d);
  if (max_variable(f) > d) throw DomainError("F uses a variable beyond the dimension");
  if (r.is_identity()) return f;
  std::vector<Expr> inner;
  inner.reserve(r.children.size());
  for (const auto& c : r.children) inner.push_back(apply_recipe(c, f, d, options));
  ExprMatrix m(r.rows.size());
  for (std::size_t j = 0; j < r.rows.size(); ++j) {
    for (const auto& g : inner) m[j].push_back(diff(g, r.rows[j]));
  }
  Expr out = determinant(m);
  check_size(out, options);
  return out;
}

void FunctionTuple::validate() const {
  if (d < 1) throw DomainError("function tuple needs d >= 1");
  if (exprs.empty()) throw DomainError("function tuple is empty");
  for (const auto& e : exprs) {
    if (max_variable(e) > d) throw DomainError("function uses a variable beyond the dimension");
  }
}

FunctionTuple FunctionTuple::euclidean(const Expr& f, int d) {
  FunctionTuple pi;
  pi.d = d;
  for (int i = 1; i <= d; ++i) pi.exprs.push_back(Expr::variable(i));
  pi.exprs.push_back(f);
  pi.validate();
  return pi;
}

Expr apply_tree(const DTree& g, const FunctionTuple& pi, const ApplyOptions& options) {
  if (g.is_leaf()) {
    g.validate(pi.d, pi.m());
    return pi.exprs[static_cast<std::size_t>(g.index() - 1)];
  }
  g.validate(pi.d, pi.m());
  std::vector<Expr> values;
  values.reserve(g.children().size());
  for (const auto& c : g.children()) values.push_back(apply_tree(c, pi, options));
  Expr out = jacobian_det(values, pi.d);
  check_size(out, options);
  return out;
}

DTree tree_of_recipe(const OperatorRecipe& r, int d) {
  r.validate(d);
  if (r.is_identity()) return DTree::leaf(d + 1);
  std::vector<DTree> slots;
  slots.reserve(static_cast<std::size_t>(d));
  std::size_t k = 0;
  for (int j = 1; j <= d; ++j) {
    if (k < r.rows.size() && r.rows[k] == j) {
      slots.push_back(tree_of_recipe(r.children[k], d));
      ++k;
    } else {
      slots.push_back(DTree::leaf(j));
    }
  }
  return DTree::node(std::move(slots));
}

EquivalenceResult recipe_tree_equivalence(const OperatorRecipe& r, const Expr& f, int d,
                                          const ZeroTestOptions& options) {
  const Expr lhs = apply_recipe(r, f, d);
  const Expr rhs = apply_tree(tree_of_recipe(r, d), FunctionTuple::euclidean(f, d));
  const ZeroTestResult z = zero_test(Expr::power(lhs, 2) - Expr::power(rhs, 2), options);

  EquivalenceResult out;
  out.verdict = z.verdict;
  out.exact = z.exact;

  Rng rng(mix_seed(options.seed, 0x5167));
  std::vector<double> p(static_cast<std::size_t>(d));
  int positive = 0, negative = 0;
  for (int t = 0; t < options.trials; ++t) {
    for (auto& x : p) x = rng.uniform(-1.0, 1.0);
    const double a = eval_unchecked(lhs, p);
    const double b = eval_unchecked(rhs, p);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    const double scale = std::max(eval_magnitude(lhs, p), eval_magnitude(rhs, p));
    if (std::abs(a) <= 1e-9 * scale || std::abs(b) <= 1e-9 * scale) continue;
    ((a > 0) == (b > 0) ? positive : negative) += 1;
  }
  out.sign_samples = positive + negative;
  if (positive > 0 && negative == 0) out.observed_sign = 1;
  if (negative > 0 && positive == 0) out.observed_sign = -1;
  return out;
}

OperatorRecipe random_recipe(Rng& rng, int d, int max_depth) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  if (max_depth <= 0) return OperatorRecipe::identity();
  // Weighted toward determinant nodes so that nesting actually occurs.
  if (rng.below(4) == 0) return OperatorRecipe::identity();
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
  std::vector<int> all(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  for (int i = d - 1; i > 0; --i) {
    std::swap(all[static_cast<std::size_t>(i)], all[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  std::vector<int> rows(all.begin(), all.begin() + n);
  std::sort(rows.begin(), rows.end());
  std::vector<OperatorRecipe> children;
  for (int k = 0; k < n; ++k) children.push_back(random_recipe(rng, d, max_depth - 1));
  return OperatorRecipe::det(std::move(rows), std::move(children));
}

std::vector<OperatorRecipe> enumerate_recipes(int d, int max_beta_norm) {
  if (d < 1 || max_beta_norm < 0) throw DomainError("enumerate_recipes needs d >= 1 and |beta| >= 0");
  // by_norm[b] holds every canonical recipe with |beta| == b.
  std::vector<std::vector<OperatorRecipe>> by_norm(static_cast<std::size_t>(max_beta_norm) + 1);
  by_norm[0].push_back(OperatorRecipe::identity());

  // Row subsets of size n in increasing order.
  auto subsets = [d](int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](int start, auto& self) -> void {
      if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i <= d; ++i) {
        cur.push_back(i);
        self(i + 1, self);
        cur.pop_back();
      }
    };
    rec(1, rec);
    return out;
  };

  for (int b = 1; b <= max_beta_norm; ++b) {
    std::vector<OperatorRecipe> level;
    for (int n = 1; n <= std::min(d, b); ++n) {
      // Children: a sorted multiset of n recipes whose norms sum to b - n.
      std::vector<OperatorRecipe> pool;
      for (int c = 0; c <= b - n; ++c) pool.insert(pool.end(), by_norm[static_cast<std::size_t>(c)].begin(), by_norm[static_cast<std::size_t>(c)].end());
      std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return compare(x, y) < 0; });
      std::vector<int> norms;
      for (const auto& p : pool) norms.push_back(type_of_recipe(p, d).beta_norm());

      std::vector<std::size_t> idx;
      auto pick = [&](std::size_t start, int budget, auto& self) -> void {
        if (static_cast<int>(idx.size()) == n) {
          if (budget != 0) return;
          std::vector<OperatorRecipe> children;
          for (auto i : idx) children.push_back(pool[i]);
          for (const auto& rows : subsets(n)) level.push_back(OperatorRecipe::det(rows, children));
          return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
          if (norms[i] > budget) continue;
          idx.push_back(i);
          self(i, budget - norms[i], self);
          idx.pop_back();
        }
      };
      pick(0, b - n, pick);
    }
    std::sort(level.begin(), level.end(), [](const auto& x, const auto& y) { return compare(x, y) < 0; });
    by_norm[static_cast<std::size_t>(b)] = std::move(level);
  }

  std::vector<OperatorRecipe> out;
  for (auto& level : by_norm) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace sublevel
