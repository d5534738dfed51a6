#pragma once

#include "sublevel/expr.hpp"
#include "sublevel/interval.hpp"
#include "sublevel/rational.hpp"
#include "sublevel/tree.hpp"

#include <span>
#include <string>
#include <vector>

namespace sublevel {

/// Exact value of 2^{r(r-1)/2} * b_1...b_d * (min(d, r) alpha + sum b - d + 1)^r.
Integer khovanskii_bound(int d, int r, int alpha, std::span<const int> betas);

struct PfaffianFormat {
  int d = 1;
  int r = 0;
  int alpha = 1;
  int beta = 1;

  void validate() const;
  friend bool operator==(const PfaffianFormat&, const PfaffianFormat&) = default;
};

/// A transcendental subterm expressed in the chain: `term` equals a polynomial
/// of degree `degree` in (x, f_1, ..., f_r).
struct ChainFunction {
  Expr term;
  int degree = 1;
};

/// A declared Pfaffian chain. Only the bookkeeping is stored: order, degree of
/// the defining polynomials, and which sin/cos/exp subterms it covers.
struct PfaffianChain {
  std::string name;
  int order = 0;
  int degree = 1;
  std::vector<ChainFunction> functions;
  /// Trigonometric chains are valid only where every argument stays in (-pi, pi).
  std::vector<Expr> bounded_arguments;

  /// The empty chain: polynomials only.
  static PfaffianChain none();
  /// f = exp(u), df = f du: order 1, degree 1.
  static PfaffianChain exponential(const Expr& u);
  /// f1 = tan(u/2), f2 = cos(u/2)^2 with df1 = (1 + f1^2)/2 du and df2 = -f1 f2 du:
  /// order 2, degree 2, sin(u) = 2 f1 f2, cos(u) = 2 f2 - 1.
  static PfaffianChain trigonometric(const Expr& u);

  /// Combination of independent chains; orders add, degree is the maximum.
  static PfaffianChain join(std::span<const PfaffianChain> chains);
};

/// Format of `e` with respect to `chain`. Throws DomainError on a sin/cos/exp
/// subterm the chain does not cover, or on a negative power of a nonconstant base.
PfaffianFormat format_of(const Expr& e, const PfaffianChain& chain, int d);

/// Checks that every bounded argument of `chain` maps `box` into (-pi, pi);
/// throws DomainError otherwise (including unbounded boxes).
void check_chain_domain(const PfaffianChain& chain, std::span<const Interval> box);

/// Format of a first partial derivative: beta -> beta + alpha - 1 (beta - 1 for r = 0, clamped at 0).
PfaffianFormat derivative_format(const PfaffianFormat& f);
/// Format of the Jacobian determinant of `rows`: per-row derivative degrees are summed.
PfaffianFormat determinant_format(std::span<const PfaffianFormat> rows);
/// Propagated format of d^G pi.
PfaffianFormat tree_format(const DTree& g, std::span<const PfaffianFormat> formats);

enum class Multiplicity { Weak, Strong };

/// Upper bound on nondegenerate solutions of d^{G_k} pi = c_k (k = 1..d) for every
/// constant right-hand side. The strong variant also covers the boundary systems
/// obtained by freezing one coordinate of a box, and returns the maximum.
Integer multiplicity_bound(const DTree& g, std::span<const PfaffianFormat> formats,
                           Multiplicity kind = Multiplicity::Weak);

struct SolutionCount {
  int count = 0;
  /// The count was unchanged when the grid resolution was doubled.
  bool certified = false;
  std::vector<std::vector<double>> roots;
};

struct CountOptions {
  int resolution = 32;  // cells per axis
  double det_threshold = 1e-8;
  int newton_iterations = 40;
};

/// Nondegenerate solutions of system = targets in `box` by interval exclusion of
/// grid cells and Newton polishing from each surviving cell.
SolutionCount count_nondegenerate(std::span<const Expr> system, std::span<const double> targets,
                                  std::span<const Interval> box, const CountOptions& options = {});

}  // namespace sublevel
