#include "sublevel/pfaffian.hpp"

#include "sublevel/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sublevel {

Integer khovanskii_bound(int d, int r, int alpha, std::span<const int> betas) {
  if (d < 1) throw DomainError("khovanskii_bound needs d >= 1");
  if (r < 0) throw DomainError("khovanskii_bound needs r >= 0");
  if (alpha < 1) throw DomainError("khovanskii_bound needs alpha >= 1");
  if (static_cast<int>(betas.size()) != d) throw DomainError("khovanskii_bound needs exactly d degrees");
  Integer product = 1;
  Integer sum = 0;
  for (int b : betas) {
    if (b < 1) throw DomainError("khovanskii_bound needs every degree >= 1");
    product *= b;
    sum += b;
  }
  const Integer base = Integer(std::min(d, r)) * alpha + sum - d + 1;
  Integer out = product;
  out <<= static_cast<unsigned>(static_cast<long long>(r) * (r - 1) / 2);
  for (int i = 0; i < r; ++i) out *= base;
  return out;
}

void PfaffianFormat::validate() const {
  if (d < 1 || r < 0 || alpha < 1 || beta < 0) throw DomainError("invalid Pfaffian format");
}

PfaffianChain PfaffianChain::none() { return {"none", 0, 1, {}, {}}; }

PfaffianChain PfaffianChain::exponential(const Expr& u) {
  const Expr arg = simplify(u);
  return {"exp(" + to_string(arg) + ")", 1, 1, {{Expr::exp(arg), 1}}, {}};
}

PfaffianChain PfaffianChain::trigonometric(const Expr& u) {
  const Expr arg = simplify(u);
  return {"trig(" + to_string(arg) + ")", 2, 2, {{Expr::sin(arg), 2}, {Expr::cos(arg), 1}}, {arg}};
}

PfaffianChain PfaffianChain::join(std::span<const PfaffianChain> chains) {
  PfaffianChain out = none();
  out.name.clear();
  for (const auto& c : chains) {
    if (c.order == 0) continue;
    if (!out.name.empty()) out.name += "+";
    out.name += c.name;
    out.order += c.order;
    out.degree = std::max(out.degree, c.degree);
    out.functions.insert(out.functions.end(), c.functions.begin(), c.functions.end());
    out.bounded_arguments.insert(out.bounded_arguments.end(), c.bounded_arguments.begin(), c.bounded_arguments.end());
  }
  if (out.name.empty()) out.name = "none";
  return out;
}

namespace {

long chain_degree(const Expr& e, const PfaffianChain& chain) {
  switch (e.kind()) {
    case Kind::Constant:
      return 0;
    case Kind::Variable:
      return 1;
    case Kind::Sum: {
      long best = 0;
      for (const auto& op : e.operands()) best = std::max(best, chain_degree(op, chain));
      return best;
    }
    case Kind::Product: {
      long total = 0;
      for (const auto& op : e.operands()) total += chain_degree(op, chain);
      return total;
    }
    case Kind::Power: {
      const long base = chain_degree(e.operand(), chain);
      if (e.exponent() < 0 && base > 0) {
        throw DomainError("negative power of a nonconstant base is not a Pfaffian polynomial: " + to_string(e));
      }
      return e.exponent() < 0 ? 0 : base * e.exponent();
    }
    case Kind::Negate:
      return chain_degree(e.operand(), chain);
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp: {
      if (chain_degree(e.operand(), chain) == 0) return 0;
      for (const auto& f : chain.functions) {
        if (f.term == e) return f.degree;
      }
      throw DomainError("transcendental subterm " + to_string(e) + " is not registered in chain " + chain.name);
    }
  }
  return 0;
}

// Canonical transcendental subterms keep their argument simplified, which is
// how the chain registers them.
Expr canonical_args(const Expr& e) { return simplify(e); }

}  // namespace

PfaffianFormat format_of(const Expr& e, const PfaffianChain& chain, int d) {
  if (d < 1) throw DomainError("format_of needs d >= 1");
  if (max_variable(e) > d) throw DomainError("expression uses a variable beyond the dimension");
  const long deg = chain_degree(canonical_args(e), chain);
  PfaffianFormat f{d, chain.order, chain.order == 0 ? 1 : chain.degree, static_cast<int>(std::max(1L, deg))};
  return f;
}

void check_chain_domain(const PfaffianChain& chain, std::span<const Interval> box) {
  for (const auto& u : chain.bounded_arguments) {
    for (const auto& iv : box) {
      if (!iv.is_finite()) throw DomainError("trigonometric chain " + chain.name + " requires a bounded box");
    }
    const Interval range = eval_interval(u, box);
    if (!(range.lo > -std::numbers::pi && range.hi < std::numbers::pi)) {
      throw DomainError("argument " + to_string(u) + " of chain " + chain.name + " leaves (-pi, pi) on the box");
    }
  }
}

PfaffianFormat derivative_format(const PfaffianFormat& f) {
  f.validate();
  PfaffianFormat out = f;
  out.beta = f.r > 0 ? f.beta + f.alpha - 1 : std::max(0, f.beta - 1);
  return out;
}

PfaffianFormat determinant_format(std::span<const PfaffianFormat> rows) {
  if (rows.empty()) throw DomainError("determinant of an empty system");
  PfaffianFormat out{rows[0].d, 0, 1, 0};
  for (const auto& row : rows) {
    row.validate();
    if (row.d != out.d) throw DomainError("formats disagree on the dimension");
    if (row.r > 0) {
      if (out.r > 0 && (row.r != out.r || row.alpha != out.alpha)) {
        throw DomainError("formats do not share a common chain");
      }
      out.r = row.r;
      out.alpha = row.alpha;
    }
    out.beta += derivative_format(row).beta;
  }
  return out;
}

PfaffianFormat tree_format(const DTree& g, std::span<const PfaffianFormat> formats) {
  if (formats.empty()) throw DomainError("tree_format needs at least one format");
  const int d = formats[0].d;
  g.validate(d, static_cast<int>(formats.size()));
  if (g.is_leaf()) return formats[static_cast<std::size_t>(g.index() - 1)];
  std::vector<PfaffianFormat> rows;
  rows.reserve(g.children().size());
  for (const auto& c : g.children()) rows.push_back(tree_format(c, formats));
  return determinant_format(rows);
}

Integer multiplicity_bound(const DTree& g, std::span<const PfaffianFormat> formats, Multiplicity kind) {
  if (formats.empty()) throw DomainError("multiplicity_bound needs at least one format");
  const int d = formats[0].d;
  g.validate(d, static_cast<int>(formats.size()));

  std::vector<PfaffianFormat> children;
  if (g.is_leaf()) {
    children.assign(static_cast<std::size_t>(d), formats[static_cast<std::size_t>(g.index() - 1)]);
  } else {
    for (const auto& c : g.children()) children.push_back(tree_format(c, formats));
  }
  int r = 0, alpha = 1;
  for (const auto& c : children) {
    if (c.r > 0) {
      if (r > 0 && (c.r != r || c.alpha != alpha)) throw DomainError("formats do not share a common chain");
      r = c.r;
      alpha = c.alpha;
    }
  }
  std::vector<int> betas;
  for (const auto& c : children) betas.push_back(std::max(1, c.beta));
  Integer best = khovanskii_bound(d, r, alpha, betas);

  if (kind == Multiplicity::Strong && d > 1) {
    // Freezing one coordinate leaves d - 1 unknowns; any d - 1 of the equations.
    for (int skip = 0; skip < d; ++skip) {
      std::vector<int> face;
      for (int k = 0; k < d; ++k) {
        if (k != skip) face.push_back(betas[static_cast<std::size_t>(k)]);
      }
      best = std::max(best, khovanskii_bound(d - 1, r, alpha, face));
    }
  }
  return best;
}

namespace {

struct RootSearch {
  std::span<const Expr> system;
  std::span<const double> targets;
  std::span<const Interval> box;
  std::vector<std::vector<Expr>> jacobian;
  CountOptions options;

  int d() const { return static_cast<int>(system.size()); }

  bool polish(std::vector<double>& x) const {
    const int n = d();
    Eigen::VectorXd f(n);
    Eigen::MatrixXd j(n, n);
    for (int it = 0; it < options.newton_iterations; ++it) {
      for (int k = 0; k < n; ++k) {
        f[k] = eval_unchecked(system[static_cast<std::size_t>(k)], x) - targets[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i) {
          j(k, i) = eval_unchecked(jacobian[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], x);
        }
      }
      if (!f.allFinite() || !j.allFinite()) return false;
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
      if (std::abs(lu.determinant()) <= options.det_threshold) return false;
      const Eigen::VectorXd step = lu.solve(f);
      double size = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] -= step[i];
        size = std::max(size, std::abs(step[i]));
        scale = std::max(scale, std::abs(x[static_cast<std::size_t>(i)]));
      }
      if (size <= 1e-14 * std::max(1.0, scale)) break;
    }
    double residual = 0.0, scale = 1.0;
    for (int k = 0; k < n; ++k) {
      const Expr& e = system[static_cast<std::size_t>(k)];
      residual = std::max(residual, std::abs(eval_unchecked(e, x) - targets[static_cast<std::size_t>(k)]));
      scale = std::max(scale, eval_magnitude(e, x) + std::abs(targets[static_cast<std::size_t>(k)]));
      for (int i = 0; i < n; ++i) {
        j(k, i) = eval_unchecked(jacobian[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], x);
      }
    }
    if (!(residual <= 1e-10 * scale)) return false;
    if (!(std::abs(j.determinant()) > options.det_threshold)) return false;
    for (int i = 0; i < n; ++i) {
      if (!box[static_cast<std::size_t>(i)].contains(x[static_cast<std::size_t>(i)])) return false;
    }
    return true;
  }

  std::vector<std::vector<double>> run(int resolution) const {
    const int n = d();
    std::vector<std::vector<double>> roots;
    std::vector<int> cell(static_cast<std::size_t>(n), 0);
    std::vector<Interval> cbox(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(n));
    for (;;) {
      for (int i = 0; i < n; ++i) {
        const Interval& b = box[static_cast<std::size_t>(i)];
        const double h = b.width() / resolution;
        const int c = cell[static_cast<std::size_t>(i)];
        cbox[static_cast<std::size_t>(i)] = {b.lo + c * h, c + 1 == resolution ? b.hi : b.lo + (c + 1) * h};
        x[static_cast<std::size_t>(i)] = cbox[static_cast<std::size_t>(i)].mid();
      }
      bool excluded = false;
      for (int k = 0; k < n && !excluded; ++k) {
        const Interval v = eval_interval(system[static_cast<std::size_t>(k)], cbox) -
                           Interval::point(targets[static_cast<std::size_t>(k)]);
        excluded = v.is_valid() && !v.contains_zero();
      }
      if (!excluded && polish(x)) {
        const bool known = std::any_of(roots.begin(), roots.end(), [&](const std::vector<double>& r) {
          double dist = 0.0;
          for (int i = 0; i < n; ++i) {
            const double w = box[static_cast<std::size_t>(i)].width();
            dist = std::max(dist, std::abs(r[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) / w);
          }
          return dist <= 1e-7;
        });
        if (!known) roots.push_back(x);
      }
      int i = 0;
      while (i < n && ++cell[static_cast<std::size_t>(i)] == resolution) cell[static_cast<std::size_t>(i++)] = 0;
      if (i == n) break;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }
};

}  // namespace

SolutionCount count_nondegenerate(std::span<const Expr> system, std::span<const double> targets,
                                  std::span<const Interval> box, const CountOptions& options) {
  const std::size_t n = system.size();
  if (n == 0) throw DomainError("empty system");
  if (targets.size() != n || box.size() != n) throw DomainError("system, targets and box must have d entries");
  if (options.resolution < 1) throw DomainError("resolution must be >= 1");
  for (const auto& b : box) {
    if (!b.is_finite() || !(b.lo < b.hi)) throw DomainError("box must be finite with positive width");
  }
  for (const auto& e : system) {
    if (max_variable(e) > static_cast<int>(n)) throw DomainError("system uses a variable beyond the dimension");
  }
  RootSearch search{system, targets, box, {}, options};
  for (const auto& e : system) {
    std::vector<Expr> row;
    for (std::size_t i = 1; i <= n; ++i) row.push_back(diff(e, static_cast<int>(i)));
    search.jacobian.push_back(std::move(row));
  }
  SolutionCount out;
  out.roots = search.run(options.resolution);
  out.count = static_cast<int>(out.roots.size());
  out.certified = static_cast<int>(search.run(2 * options.resolution).size()) == out.count;
  return out;
}

}  // namespace sublevel
