#pragma once

#include "sublevel/expr.hpp"
#include "sublevel/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace test {

// Random expression over x1..xd drawn from every node kind, kept small enough
// that values stay moderate on [-1, 1]^d.
inline sublevel::Expr random_expr(sublevel::Rng& rng, int d, int depth) {
  using sublevel::Expr;
  if (depth == 0 || rng.below(5) == 0) {
    if (rng.below(3) == 0) return Expr::constant(static_cast<long long>(rng.below(7)) - 3);
    return Expr::variable(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d))));
  }
  switch (rng.below(7)) {
    case 0:
      return random_expr(rng, d, depth - 1) + random_expr(rng, d, depth - 1);
    case 1:
      return random_expr(rng, d, depth - 1) * random_expr(rng, d, depth - 1);
    case 2:
      return Expr::power(random_expr(rng, d, depth - 1), 1 + static_cast<long>(rng.below(3)));
    case 3:
      return -random_expr(rng, d, depth - 1);
    case 4:
      return Expr::sin(random_expr(rng, d, depth - 1));
    case 5:
      return Expr::cos(random_expr(rng, d, depth - 1));
    default:
      return Expr::exp(Expr::constant(sublevel::Rational(1, 2)) * random_expr(rng, d, depth - 1));
  }
}

inline std::vector<double> random_point(sublevel::Rng& rng, int d, double lo = -1.0, double hi = 1.0) {
  std::vector<double> p(static_cast<std::size_t>(d));
  for (auto& x : p) x = rng.uniform(lo, hi);
  return p;
}

inline double central_difference(const sublevel::Expr& e, std::vector<double> p, int i, double h) {
  const auto k = static_cast<std::size_t>(i - 1);
  const double x = p[k];
  p[k] = x + h;
  const double up = sublevel::eval(e, p);
  p[k] = x - h;
  const double down = sublevel::eval(e, p);
  return (up - down) / (2.0 * h);
}

}  // namespace test
