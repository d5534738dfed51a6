#include "support.hpp"

#include "sublevel/error.hpp"
#include "sublevel/normal_form.hpp"
#include "sublevel/symbolic.hpp"

#include <doctest.h>

#include <numbers>

using namespace sublevel;

namespace {

Expr p2(const char* s) { return parse(s, 2); }

}  // namespace

TEST_CASE("parse builds the grammar's tree") {
  const Expr e = p2("x1^2 + x2^2");
  REQUIRE(e.kind() == Kind::Sum);
  REQUIRE(e.operands().size() == 2);
  CHECK(e.operand(0) == Expr::power(Expr::variable(1), 2));
  CHECK(e.operand(1) == Expr::power(Expr::variable(2), 2));

  const Expr f = p2("(1/2)*exp(x1)*sin(3*x2)");
  REQUIRE(f.kind() == Kind::Product);
  REQUIRE(f.operands().size() == 3);
  CHECK(f.operand(0) == Expr::constant(Rational(1, 2)));
  CHECK(f.operand(1) == Expr::exp(Expr::variable(1)));
  CHECK(f.operand(2).kind() == Kind::Sin);
  CHECK(simplify(f.operand(2).operand()) == simplify(Expr::constant(3) * Expr::variable(2)));
}

TEST_CASE("parse reports malformed input") {
  CHECK_THROWS_AS(parse("x3 + 1", 2), ParseError);
  CHECK_THROWS_AS(parse("x1^1.5", 1), ParseError);
  CHECK_THROWS_AS(parse("w + 1", 1), ParseError);
  CHECK_THROWS_AS(parse("x1 / x1", 1), ParseError);
  CHECK_THROWS_AS(parse("x1 / 0", 1), ParseError);
  CHECK_THROWS_AS(parse("(x1 + 1", 1), ParseError);
  CHECK_THROWS_AS(parse("x1 +", 1), ParseError);
  CHECK_THROWS_AS(parse("x0", 1), ParseError);
  try {
    parse("x1 + * 2", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("parse accepts the documented forms") {
  CHECK(eval(parse("x1^2/2", 1), std::vector<double>{3.0}) == doctest::Approx(4.5));
  CHECK(eval(parse("x1^-2", 1), std::vector<double>{2.0}) == doctest::Approx(0.25));
  CHECK(eval(parse("-x1^2", 1), std::vector<double>{3.0}) == doctest::Approx(-9.0));
  CHECK(eval(parse("2.5 * x1", 1), std::vector<double>{2.0}) == doctest::Approx(5.0));
  CHECK_THROWS_AS(parse("2.5e1 * x1", 1), ParseError);
  CHECK(eval(parse("  3 /4 * x1 ", 1), std::vector<double>{4.0}) == doctest::Approx(3.0));
  CHECK(simplify(parse("3/4*x1", 1)) == simplify(Expr::constant(Rational(3, 4)) * Expr::variable(1)));
}

TEST_CASE("diff examples") {
  CHECK(diff(p2("x1^2"), 1) == simplify(p2("2*x1")));
  CHECK(diff(p2("exp(x1)*sin(x2)"), 2) == simplify(p2("exp(x1)*cos(x2)")));
  CHECK(diff(p2("x1^2"), 2).is_zero());
  CHECK(diff(p2("x1^-1"), 1) == simplify(p2("-x1^-2")));
}

TEST_CASE("diff of the counterexample family matches finite differences") {
  const Expr f = p2("(1/10)*exp(x1)*sin(10*x2)");
  const Expr df = diff(f, 2);
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto p = test::random_point(rng, 2);
    const double exact = eval(df, p);
    const double fd = test::central_difference(f, p, 2, 1e-5);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("eval examples") {
  CHECK(eval(p2("x1^2+x2^2"), std::vector<double>{3, 4}) == 25.0);
  CHECK(eval(p2("exp(x1)"), std::vector<double>{0, 0}) == 1.0);
  CHECK(std::abs(eval(p2("sin(x2)"), std::vector<double>{0, std::numbers::pi / 2}) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(eval(p2("exp(x1)^1000"), std::vector<double>{10, 0}), EvalError);
  CHECK_THROWS_AS(eval(p2("x1^-1"), std::vector<double>{0, 0}), EvalError);
  CHECK_THROWS_AS(eval(p2("x2"), std::vector<double>{0}), DomainError);
}

TEST_CASE("property: diff agrees with central differences") {
  Rng rng(11);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Expr e = test::random_expr(rng, d, 4);
    const int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
    const Expr de = diff(e, i);
    const auto p = test::random_point(rng, d);
    const double exact = eval_unchecked(de, p);
    const double fd = test::central_difference(e, p, i, 1e-6);
    if (!std::isfinite(exact) || !std::isfinite(fd)) continue;
    ++checked;
    CHECK_MESSAGE(std::abs(exact - fd) <= 1e-5 * (1.0 + std::abs(exact)), to_string(e), " d/dx", i);
  }
  CHECK(checked > 150);
}

TEST_CASE("property: simplify preserves values and is idempotent") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Expr e = test::random_expr(rng, d, 4);
    const Expr s = simplify(e);
    CHECK(simplify(s) == s);
    for (int k = 0; k < 50; ++k) {
      const auto p = test::random_point(rng, d);
      const double a = eval_unchecked(e, p);
      const double b = eval_unchecked(s, p);
      if (!std::isfinite(a)) continue;
      CHECK_MESSAGE(std::abs(a - b) <= 1e-12 * std::max(1.0, eval_magnitude(e, p)), to_string(e));
    }
  }
}

TEST_CASE("property: parse of the printed form gives back the canonical form") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Expr s = simplify(test::random_expr(rng, d, 4));
    const std::string text = to_string(s);
    CHECK_MESSAGE(simplify(parse(text, d)) == s, text);
  }
  for (const char* text : {"x1 - 3/4*x2", "-(x1 + x2)^3", "(2/3)*x1^-2 - 5", "exp(-x1)*cos(2*x2 + 1)"}) {
    const Expr s = simplify(parse(text, 2));
    CHECK_MESSAGE(simplify(parse(to_string(s), 2)) == s, text);
  }
}

TEST_CASE("simplify collects and folds") {
  CHECK(simplify(p2("x1 - x1")).is_zero());
  CHECK(simplify(p2("x1*x1*x1")) == Expr::power(Expr::variable(1), 3));
  CHECK(simplify(p2("2*x1 + 3*x1")) == simplify(p2("5*x1")));
  CHECK(simplify(p2("0*sin(x1) + 1*x2")) == Expr::variable(2));
  CHECK(simplify(p2("(x1^2)^3")) == Expr::power(Expr::variable(1), 6));
  CHECK(simplify(p2("sin(0) + cos(0) + exp(0)")) == Expr::constant(2));
  CHECK(simplify(p2("x2 + x1")) == simplify(p2("x1 + x2")));
  // No trigonometric rewriting.
  CHECK_FALSE(simplify(p2("sin(x1)^2 + cos(x1)^2 - 1")).is_zero());
}

TEST_CASE("zero_test examples") {
  const auto a = zero_test(p2("x1 - x1"));
  CHECK(a.verdict == Verdict::Zero);
  CHECK(a.exact);
  const auto b = zero_test(p2("x1*x2"));
  CHECK(b.verdict == Verdict::NonZero);
  CHECK(b.exact);
  const auto c = zero_test(p2("(x1 + x2)^2 - x1^2 - 2*x1*x2 - x2^2"));
  CHECK(c.verdict == Verdict::Zero);
  CHECK(c.exact);
  const auto t = zero_test(p2("sin(x1)^2 + cos(x1)^2 - 1"));
  CHECK(t.verdict == Verdict::Zero);
  CHECK_FALSE(t.exact);
  CHECK(t.samples_used == 50);
  CHECK(zero_test(p2("sin(x1)^2 - cos(x1)^2")).verdict == Verdict::NonZero);
  CHECK(zero_test(p2("exp(x1)*exp(x2) - exp(x1 + x2)")).verdict == Verdict::Zero);
}

TEST_CASE("zero_test on the Hessian determinant of a composite") {
  const Expr f = p2("(x1 + 2*x2)^3");
  ExprMatrix h(2);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) h[i - 1].push_back(diff(diff(f, i), j));
  }
  const auto z = zero_test(determinant(h));
  CHECK(z.verdict == Verdict::Zero);
  CHECK(z.exact);
}

TEST_CASE("zero_test is reproducible for a seed") {
  ZeroTestOptions o;
  o.seed = 99;
  const Expr e = p2("sin(x1)*cos(x2) - cos(x2)*sin(x1)");
  const auto a = zero_test(e, o);
  const auto b = zero_test(e, o);
  CHECK(a.verdict == b.verdict);
  CHECK(a.max_relative_residual == b.max_relative_residual);
  o.trials = 0;
  CHECK_THROWS_AS(zero_test(e, o), DomainError);
}

TEST_CASE("jacobian_det examples") {
  const std::vector<Expr> id{Expr::variable(1), Expr::variable(2)};
  CHECK(jacobian_det(id, 2) == Expr::constant(1));
  const std::vector<Expr> swapped{Expr::variable(2), Expr::variable(1)};
  CHECK(jacobian_det(swapped, 2) == Expr::constant(-1));
  const std::vector<Expr> doubled{p2("2*x1"), p2("2*x2")};
  CHECK(jacobian_det(doubled, 2) == Expr::constant(4));
  CHECK_THROWS_AS(jacobian_det(doubled, 3), DomainError);
}

TEST_CASE("property: jacobian_det is alternating") {
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const int d = 2 + static_cast<int>(rng.below(2));
    std::vector<Expr> es;
    for (int k = 0; k < d; ++k) es.push_back(test::random_expr(rng, d, 3));
    const std::size_t i = rng.below(static_cast<std::uint64_t>(d));
    std::size_t j = rng.below(static_cast<std::uint64_t>(d - 1));
    if (j >= i) ++j;
    std::vector<Expr> swapped = es;
    std::swap(swapped[i], swapped[j]);
    const Expr sum = jacobian_det(es, d) + jacobian_det(swapped, d);
    CHECK(zero_test(sum).verdict == Verdict::Zero);
  }
}

TEST_CASE("determinant matches cofactor expansion numerically") {
  Rng rng(15);
  for (int n = 1; n <= 4; ++n) {
    ExprMatrix m(static_cast<std::size_t>(n));
    for (auto& row : m) {
      for (int k = 0; k < n; ++k) row.push_back(test::random_expr(rng, 2, 2));
    }
    const Expr det = determinant(m);
    const auto p = test::random_point(rng, 2);
    // Test-side Gaussian elimination on the evaluated matrix.
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a[r].push_back(eval_unchecked(m[r][c], p));
    }
    double ref = 1.0;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int r = c + 1; r < n; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      }
      if (a[piv][c] == 0.0) {
        ref = 0.0;
        break;
      }
      if (piv != c) {
        std::swap(a[piv], a[c]);
        ref = -ref;
      }
      ref *= a[c][c];
      for (int r = c + 1; r < n; ++r) {
        const double f = a[r][c] / a[c][c];
        for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    CHECK(eval_unchecked(det, p) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("normal form decides polynomial identities") {
  const NormalForm a = NormalForm::expand(p2("(x1 + x2)^3"));
  const NormalForm b = NormalForm::expand(p2("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3"));
  CHECK((a - b).is_zero());
  CHECK(a.term_count() == 4);
  CHECK(a.is_laurent_polynomial());
  CHECK(a.total_degree() == 3);
  CHECK_FALSE(NormalForm::expand(p2("exp(x1)")).is_laurent_polynomial());
  CHECK_THROWS_AS(NormalForm::expand(p2("(x1 + x2 + 1)^60"), 100), BudgetError);
}
