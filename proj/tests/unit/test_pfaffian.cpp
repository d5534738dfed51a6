#include "sublevel/error.hpp"
#include "sublevel/pfaffian.hpp"
#include "sublevel/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace sublevel;

namespace {

// Direct evaluation of the bound with plain big-integer arithmetic.
Integer reference_bound(int d, int r, int alpha, const std::vector<int>& betas) {
  Integer two_power = 1;
  for (int k = 0; k < r * (r - 1) / 2; ++k) two_power *= 2;
  Integer product = 1;
  for (int b : betas) product *= b;
  const Integer base = std::min(d, r) * alpha + std::accumulate(betas.begin(), betas.end(), 0) - d + 1;
  Integer power = 1;
  for (int k = 0; k < r; ++k) power *= base;
  return two_power * product * power;
}

std::vector<Interval> cube(int d, double lo, double hi) { return std::vector<Interval>(static_cast<std::size_t>(d), {lo, hi}); }

}  // namespace

TEST_CASE("khovanskii_bound examples") {
  const std::vector<int> b3{2, 3, 4};
  CHECK(khovanskii_bound(3, 0, 5, b3) == 24);
  const std::vector<int> ones{1, 1};
  CHECK(khovanskii_bound(2, 1, 1, ones) == 2);
  const std::vector<int> three{3};
  CHECK(khovanskii_bound(1, 2, 2, three) == 150);
  CHECK_THROWS_AS(khovanskii_bound(2, 0, 1, three), DomainError);
  const std::vector<int> zero{0, 1};
  CHECK_THROWS_AS(khovanskii_bound(2, 0, 1, zero), DomainError);
  CHECK_THROWS_AS(khovanskii_bound(2, -1, 1, ones), DomainError);
}

TEST_CASE("khovanskii_bound needs no overflow handling") {
  const std::vector<int> big(6, 50);
  const Integer v = khovanskii_bound(6, 12, 40, big);
  CHECK(v == reference_bound(6, 12, 40, big));
  CHECK(v > Integer(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("property: khovanskii_bound matches direct evaluation and is monotone") {
  for (int d = 1; d <= 3; ++d) {
    for (int r = 0; r <= 4; ++r) {
      for (int alpha = 1; alpha <= 3; ++alpha) {
        std::vector<int> betas(static_cast<std::size_t>(d), 1);
        for (int b = 1; b <= 4; ++b) {
          betas[0] = b;
          const Integer v = khovanskii_bound(d, r, alpha, betas);
          CHECK(v == reference_bound(d, r, alpha, betas));
          for (std::size_t i = 0; i < betas.size(); ++i) {
            auto up = betas;
            ++up[i];
            CHECK(khovanskii_bound(d, r, alpha, up) >= v);
          }
          CHECK(khovanskii_bound(d, r + 1, alpha, betas) >= v);
        }
      }
    }
  }
}

TEST_CASE("format_of examples") {
  const auto poly = format_of(parse("x1^2*x2 + 1", 2), PfaffianChain::none(), 2);
  CHECK(poly == PfaffianFormat{2, 0, 1, 3});

  const auto chain = PfaffianChain::exponential(Expr::variable(1));
  const Expr e = parse("exp(x1)", 2);
  const auto f = format_of(e, chain, 2);
  CHECK(f == PfaffianFormat{2, 1, 1, 1});
  CHECK(derivative_format(f) == PfaffianFormat{2, 1, 1, 1});
  CHECK(format_of(diff(e, 1), chain, 2) == f);

  CHECK_THROWS_AS(format_of(parse("sin(x1)", 2), chain, 2), DomainError);
  CHECK_THROWS_AS(format_of(parse("x1^-1", 2), PfaffianChain::none(), 2), DomainError);
  CHECK(format_of(parse("x1*exp(x1)^2 + x2", 2), chain, 2).beta == 3);
}

TEST_CASE("trigonometric chains need a bounded box") {
  const auto trig = PfaffianChain::trigonometric(Expr::variable(1));
  CHECK(trig.order == 2);
  CHECK(trig.degree == 2);
  CHECK(format_of(parse("sin(x1)", 1), trig, 1).beta == 2);
  CHECK(format_of(parse("cos(x1)", 1), trig, 1).beta == 1);
  CHECK_NOTHROW(check_chain_domain(trig, cube(1, -3.0, 3.0)));
  CHECK_THROWS_AS(check_chain_domain(trig, cube(1, -4.0, 3.0)), DomainError);
  CHECK_THROWS_AS(check_chain_domain(trig, std::vector<Interval>{Interval::entire()}), DomainError);

  const std::vector<PfaffianChain> parts{PfaffianChain::exponential(Expr::variable(1)), trig};
  const auto joined = PfaffianChain::join(parts);
  CHECK(joined.order == 3);
  CHECK(joined.degree == 2);
  CHECK(format_of(parse("exp(x1)*sin(x1)", 1), joined, 1).beta == 3);
}

TEST_CASE("derivative and determinant formats") {
  CHECK(derivative_format({2, 0, 1, 4}) == PfaffianFormat{2, 0, 1, 3});
  CHECK(derivative_format({2, 0, 1, 0}).beta == 0);
  CHECK(derivative_format({2, 2, 3, 4}) == PfaffianFormat{2, 2, 3, 6});
  const std::vector<PfaffianFormat> rows{{2, 0, 1, 3}, {2, 0, 1, 2}};
  CHECK(determinant_format(rows).beta == 3);
}

TEST_CASE("multiplicity_bound examples") {
  for (int d = 1; d <= 4; ++d) {
    std::vector<DTree> leaves;
    std::vector<PfaffianFormat> formats;
    for (int j = 1; j <= d; ++j) {
      leaves.push_back(DTree::leaf(j));
      formats.push_back({d, 0, 1, 1});
    }
    CHECK(multiplicity_bound(DTree::node(leaves), formats) == 1);
  }

  const std::vector<PfaffianFormat> hess{{2, 0, 1, 1}, {2, 0, 1, 1}, {2, 0, 1, 4}};
  CHECK(multiplicity_bound(hessian_tree(2), hess) == 9);

  const std::vector<PfaffianFormat> chained{{2, 1, 1, 1}, {2, 1, 1, 1}, {2, 1, 1, 2}};
  const DTree g = hessian_tree(2);
  std::vector<int> betas;
  for (const auto& c : g.children()) betas.push_back(tree_format(c, chained).beta);
  CHECK(multiplicity_bound(g, chained) == khovanskii_bound(2, 1, 1, betas));
  CHECK(multiplicity_bound(g, chained, Multiplicity::Strong) >= multiplicity_bound(g, chained));
}

TEST_CASE("property: multiplicity_bound is monotone in beta") {
  const DTree g = hessian_tree(2);
  for (int r = 0; r <= 2; ++r) {
    for (int b = 1; b <= 6; ++b) {
      const std::vector<PfaffianFormat> lo{{2, r, 1, 1}, {2, r, 1, 1}, {2, r, 1, b}};
      const std::vector<PfaffianFormat> hi{{2, r, 1, 1}, {2, r, 1, 1}, {2, r, 1, b + 1}};
      CHECK(multiplicity_bound(g, hi) >= multiplicity_bound(g, lo));
      CHECK(multiplicity_bound(g, hi, Multiplicity::Strong) >= multiplicity_bound(g, lo, Multiplicity::Strong));
    }
  }
}

TEST_CASE("count_nondegenerate examples") {
  const std::vector<Expr> quad{parse("x1^2 - 1/4", 1)};
  const std::vector<double> zero1{0.0};
  const auto a = count_nondegenerate(quad, zero1, cube(1, -1, 1));
  CHECK(a.count == 2);
  CHECK(a.certified);
  REQUIRE(a.roots.size() == 2);
  CHECK(std::abs(std::abs(a.roots[0][0]) - 0.5) < 1e-10);

  const std::vector<Expr> circle{parse("x1^2 + x2^2 - 1", 2), parse("x1 - x2", 2)};
  const std::vector<double> zero2{0.0, 0.0};
  const auto b = count_nondegenerate(circle, zero2, cube(2, -2, 2));
  CHECK(b.count == 2);
  CHECK(b.certified);
  for (const auto& root : b.roots) {
    CHECK(std::abs(std::abs(root[0]) - std::sqrt(0.5)) < 1e-9);
    CHECK(std::abs(root[0] - root[1]) < 1e-9);
  }

  const std::vector<Expr> none{parse("x1^2 + x2^2", 2), parse("x1 + x2", 2)};
  const std::vector<double> neg{-1.0, 0.3};
  CHECK(count_nondegenerate(none, neg, cube(2, -2, 2)).count == 0);
}

TEST_CASE("count_nondegenerate skips degenerate roots") {
  // x1^2 = 0 has a double root with vanishing derivative.
  const std::vector<Expr> sys{parse("x1^2", 1)};
  const std::vector<double> zero{0.0};
  CHECK(count_nondegenerate(sys, zero, cube(1, -1, 1)).count == 0);
}

TEST_CASE("property: counts stay below Bezout and are translation invariant") {
  Rng rng(41);
  const std::vector<std::pair<std::string, std::string>> systems{
      {"x1^2 + x2^2 - 1", "x1*x2 - 1/4"},
      {"x1^3 - x1 - x2", "x2^2 - x1"},
      {"x1^2 - x2", "x2^2 - x1 + x1*x2"},
  };
  const std::vector<int> degrees{2, 2, 3, 2, 2, 2};
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const Integer bezout = degrees[2 * s] * degrees[2 * s + 1];
    for (int n = 0; n < 4; ++n) {
      const std::vector<double> targets{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
      const std::vector<Expr> sys{parse(systems[s].first, 2), parse(systems[s].second, 2)};
      const auto base = count_nondegenerate(sys, targets, cube(2, -2, 2));
      CHECK(Integer(base.count) <= bezout);

      const double tx = rng.uniform(-1, 1);
      const double ty = rng.uniform(-1, 1);
      // Substitute x -> x - t by composing with a shifted variable.
      const auto shift = [&](const std::string& text) {
        std::string out;
        for (std::size_t i = 0; i < text.size(); ++i) {
          if (text[i] == 'x' && i + 1 < text.size()) {
            const char c = text[++i];
            out += c == '1' ? "(x1 - " + std::to_string(tx) + ")" : "(x2 - " + std::to_string(ty) + ")";
          } else {
            out += text[i];
          }
        }
        return out;
      };
      const std::vector<Expr> moved{parse(shift(systems[s].first), 2), parse(shift(systems[s].second), 2)};
      const std::vector<Interval> box{{-2 + tx, 2 + tx}, {-2 + ty, 2 + ty}};
      const auto translated = count_nondegenerate(moved, targets, box);
      CHECK(translated.count == base.count);
    }
  }
}
