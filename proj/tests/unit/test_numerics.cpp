#include "sublevel/error.hpp"
#include "sublevel/numerics.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace sublevel;

namespace {

FunctionTuple tuple(int d, std::initializer_list<const char*> texts) {
  FunctionTuple pi;
  pi.d = d;
  for (const char* t : texts) pi.exprs.push_back(parse(t, d));
  return pi;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

EstimateSpec sublevel_spec(const char* f, int d, const DTree& tree, double lo, double hi) {
  EstimateSpec s;
  s.kind = EstimateKind::Sublevel;
  s.pi = FunctionTuple::euclidean(parse(f, d), d);
  s.tree = tree;
  s.constraints.domain = Box::cube(d, lo, hi);
  s.ladder = geometric_ladder(0.0625, 0.5, 9);
  return s;
}

}  // namespace

TEST_CASE("constrained_measure examples") {
  const auto a = constrained_measure(tuple(1, {"x1"}), ConstraintSet::sublevel(Box::cube(1, 0, 1), 1, 0.1));
  CHECK(std::abs(a.value - 0.1) <= 1e-5);
  CHECK(a.method == MeasureMethod::TensorGrid);

  const double eps = 0.05;
  const auto b = constrained_measure(tuple(2, {"x1*x2"}), ConstraintSet::sublevel(Box::cube(2, 0, 1), 1, eps));
  CHECK(rel(b.value, eps * (1 - std::log(eps))) < 0.01);

  const auto c = constrained_measure(tuple(2, {"x1^2 + x2^2"}), ConstraintSet::sublevel(Box::cube(2, -1, 1), 1, 0.25));
  CHECK(rel(c.value, std::numbers::pi * 0.25) < 0.01);
  CHECK(c.value <= 4.0);
}

TEST_CASE("constrained_measure in higher dimension uses seeded Monte Carlo") {
  MeasureOptions o;
  o.samples = 200000;
  o.seed = 5;
  const auto c = ConstraintSet::sublevel(Box::cube(4, 0, 1), 1, 0.3);
  const auto a = constrained_measure(tuple(4, {"x1"}), c, o);
  CHECK(a.method == MeasureMethod::MonteCarlo);
  CHECK(a.samples == 200000);
  CHECK(std::abs(a.value - 0.3) <= a.half_width);
  const auto b = constrained_measure(tuple(4, {"x1"}), c, o);
  CHECK(a.value == b.value);
  o.parallel.threads = 4;
  CHECK(constrained_measure(tuple(4, {"x1"}), c, o).value == a.value);
  o.samples = 10;
  CHECK_THROWS_AS(constrained_measure(tuple(4, {"x1"}), c, o), DomainError);
}

TEST_CASE("constrained_measure reports evaluation failures") {
  const auto c = ConstraintSet::sublevel(Box::cube(1, -1, 1), 1, 0.5);
  MeasureOptions o;
  o.resolution = 3;  // a midpoint lands on the pole
  CHECK_THROWS_AS(constrained_measure(tuple(1, {"x1^-1"}), c, o), EvalError);
}

TEST_CASE("property: measure is monotone in the constraint and converges") {
  const auto pi = tuple(2, {"x1*x2 + sin(3*x1)*x2^2"});
  double previous = -1.0;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2, 0.4}) {
    MeasureOptions o;
    o.resolution = 256;
    const auto c = ConstraintSet::sublevel(Box::cube(2, 0, 1), 1, eps);
    const auto coarse = constrained_measure(pi, c, o);
    CHECK(coarse.value >= previous);
    previous = coarse.value;
    o.resolution = 512;
    const auto fine = constrained_measure(pi, c, o);
    CHECK(std::abs(fine.value - coarse.value) < 3.0 * coarse.half_width + 1e-15);
  }
}

TEST_CASE("measure does not depend on the thread count") {
  const auto pi = tuple(3, {"x1*x2*x3 - 1/8"});
  const auto c = ConstraintSet::sublevel(Box::cube(3, 0, 1), 1, 0.01);
  MeasureOptions o;
  const auto one = constrained_measure(pi, c, o);
  o.parallel.threads = 3;
  const auto three = constrained_measure(pi, c, o);
  CHECK(one.value == three.value);
  CHECK(one.half_width == three.half_width);
}

TEST_CASE("inf_abs examples") {
  const auto a = inf_abs(parse("4", 2), Box::cube(2, -3, 5));
  CHECK(a.naive_min == 4.0);
  REQUIRE(a.certified_lower);
  CHECK(*a.certified_lower == 4.0);

  const auto b = inf_abs(parse("exp(2*x1)", 2), Box::cube(2, 0, 1));
  CHECK(std::abs(b.naive_min - 1.0) < 1e-2);
  CHECK(b.naive_min >= 1.0);
  REQUIRE(b.certified_lower);
  CHECK(*b.certified_lower <= 1.0);
  CHECK(*b.certified_lower >= 1.0 - 1e-2);
  CHECK(b.argmin[0] < 0.01);

  const auto c = inf_abs(parse("x1^2", 1), Box::cube(1, -1, 1));
  CHECK(c.naive_min < 1e-6);
  REQUIRE(c.certified_lower);
  CHECK(*c.certified_lower == 0.0);
}

TEST_CASE("inf_abs matches an exhaustive grid scan") {
  const Expr e = parse("x1^2 - x2 + 1/3 + sin(2*x1*x2)", 2);
  const long n = 64;
  const Box box = Box::cube(2, -1, 1);
  const auto r = inf_abs(e, box, n);
  double best = INFINITY;
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      const std::vector<double> p{-1 + 2 * (i + 0.5) / n, -1 + 2 * (k + 0.5) / n};
      best = std::min(best, std::abs(eval(e, p)));
    }
  }
  CHECK(r.naive_min == best);
  REQUIRE(r.certified_lower);
  CHECK(*r.certified_lower <= best);
}

TEST_CASE("oscillatory_integral examples") {
  const auto pi = tuple(1, {"x1"});
  const ConstraintSet c{Box::cube(1, 0, 1), {}};
  const auto r = oscillatory_integral(pi, 1, c, 10.0);
  const std::complex<double> exact = (std::exp(std::complex<double>(0, 10)) - 1.0) / std::complex<double>(0, 10);
  CHECK(std::abs(r.value - exact) < 1e-6);
  CHECK(r.converged);

  // Stationary-phase expansion of the Fresnel integral on [0,1]:
  // (1/2) sqrt(pi/lambda) e^{i pi/4} + e^{i lambda}/(2 i lambda) + O(lambda^-2).
  const auto fresnel = tuple(1, {"x1^2"});
  for (double lambda : {64.0, 256.0, 1024.0}) {
    const auto f = oscillatory_integral(fresnel, 1, c, lambda);
    const std::complex<double> i(0, 1);
    const std::complex<double> approx =
        0.5 * std::sqrt(std::numbers::pi / lambda) * std::exp(i * std::numbers::pi / 4.0) + std::exp(i * lambda) / (2.0 * i * lambda);
    CHECK(std::abs(f.value - approx) < 1.0 / (lambda * lambda));
    CHECK(std::abs(std::abs(f.value) * std::sqrt(lambda) - 0.5 * std::sqrt(std::numbers::pi)) < 2.0 / std::sqrt(lambda));
  }
}

TEST_CASE("property: oscillatory integral at lambda = 0 is the measure") {
  const auto pi = tuple(2, {"x1^2 + x2^2"});
  const auto c = ConstraintSet::sublevel(Box::cube(2, -1, 1), 1, 0.5);
  OscillatoryOptions o;
  o.tol = 1e-5;
  const auto r = oscillatory_integral(pi, 1, c, 0.0, o);
  const auto m = constrained_measure(pi, c);
  CHECK(std::abs(r.value.imag()) < 1e-12);
  CHECK(std::abs(r.value.real() - m.value) <= r.error + m.half_width + 1e-9);
  CHECK(rel(r.value.real(), std::numbers::pi * 0.5) < 0.01);
}

TEST_CASE("oscillatory integral reports budget exhaustion") {
  OscillatoryOptions o;
  o.tol = 1e-12;
  o.max_cells = 20;
  const auto pi = tuple(2, {"x1^2 + x2^2"});
  const auto r = oscillatory_integral(pi, 1, ConstraintSet::sublevel(Box::cube(2, -1, 1), 1, 0.5), 5.0, o);
  CHECK_FALSE(r.converged);
  CHECK(r.error > 2 * o.tol);
}

TEST_CASE("fit_decay examples") {
  std::vector<std::pair<double, double>> sq;
  for (int k = 4; k <= 12; ++k) sq.emplace_back(std::ldexp(1.0, -k), std::ldexp(1.0, -2 * k));
  const auto a = fit_decay(sq, 2.0);
  CHECK(std::abs(a.slope - 2.0) < 1e-9);
  CHECK(std::abs(a.max_ratio_constant - 1.0) < 1e-12);
  CHECK_FALSE(a.violation);

  std::vector<std::pair<double, double>> lg;
  std::vector<std::pair<double, double>> flat;
  for (int k = 4; k <= 12; ++k) {
    const double p = std::ldexp(1.0, -k);
    lg.emplace_back(p, p * (1 - std::log(p)));
    flat.emplace_back(p, 0.3);
  }
  const auto b = fit_decay(lg, 0.5);
  CHECK(b.slope > 0.8);
  CHECK(b.slope < 1.0);
  CHECK_FALSE(b.violation);
  for (std::size_t i = 1; i < b.ratios.size(); ++i) CHECK(b.ratios[i] < b.ratios[i - 1]);

  const auto c = fit_decay(flat, 0.5);
  CHECK(c.violation);
  CHECK(std::abs(c.slope) < 1e-12);

  CHECK_THROWS_AS(fit_decay({{1, 1}, {2, 2}, {3, 3}}, 1.0), DomainError);
  CHECK_THROWS_AS(fit_decay({{1, 1}, {2, 0}, {3, 3}, {4, 4}}, 1.0), DomainError);
  CHECK_THROWS_AS(fit_decay({{1, 1}, {1, 2}, {3, 3}, {4, 4}}, 1.0), DomainError);
  CHECK_THROWS_AS(fit_decay({{-1, 1}, {2, 2}, {3, 3}, {4, 4}}, 1.0), DomainError);
}

TEST_CASE("fit_decay flags growth in the last half only") {
  // Ratios decrease early and then grow 10% per octave.
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k < 10; ++k) {
    const double p = std::ldexp(1.0, -k);
    const double ratio = k < 5 ? 1.0 / (k + 1) : 0.2 * std::pow(1.1, k - 4);
    s.emplace_back(p, ratio * p);
  }
  CHECK(fit_decay(s, 1.0).violation);
}

TEST_CASE("verify_estimate: sublevel for x1^2/2") {
  auto s = sublevel_spec("x1^2/2", 1, mixed_derivative_tree({2}, 1), -1, 1);
  const auto r = verify_estimate(s);
  CHECK(r.predicted_exponent == 0.5);
  CHECK(std::abs(r.fitted_slope - 0.5) < 0.02);
  CHECK(r.c_star <= 2 * std::sqrt(2.0));
  CHECK(r.verdict == EstimateVerdict::Bounded);
  CHECK(std::abs(r.inf_naive - 1.0) < 1e-12);
  for (const auto& row : r.rows) {
    CHECK(rel(row.value, 2 * std::sqrt(2 * row.parameter)) < 1e-3);
  }
}

TEST_CASE("verify_estimate: Hessian of the disk") {
  auto s = sublevel_spec("x1^2 + x2^2", 2, hessian_tree(2), -1, 1);
  const auto r = verify_estimate(s);
  CHECK(std::abs(r.predicted_exponent - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(r.fitted_slope - 1.0) < 0.05);
  CHECK(std::abs(r.inf_naive - 4.0) < 1e-12);
  CHECK(r.verdict == EstimateVerdict::Bounded);
}

TEST_CASE("verify_estimate: multilinear for x1*x2") {
  EstimateSpec s;
  s.kind = EstimateKind::Multilinear;
  s.pi = FunctionTuple::euclidean(parse("x1*x2", 2), 2);
  s.tree = mixed_derivative_tree({1, 1}, 2);
  s.constraints.domain = Box::cube(2, 0, 1);
  s.constraints.constraints = {{1, {0, 1}}, {2, {0, 1}}};
  s.ladder = geometric_ladder(0.0625, 0.5, 9);
  const auto r = verify_estimate(s);
  CHECK(r.predicted_exponent == 0.5);
  CHECK(r.verdict == EstimateVerdict::Bounded);
  for (const auto& row : r.rows) {
    const double eps = row.parameter;
    CHECK(rel(row.value, eps * (1 - std::log(eps))) < 0.01);
  }
}

TEST_CASE("property: multilinear ratios are scaling covariant") {
  std::vector<double> reference;
  for (double s1 : {0.5, 1.0, 2.0}) {
    for (double s2 : {0.5, 1.0, 2.0}) {
      const double t = s1 * s2 / 2.0;
      EstimateSpec s;
      s.kind = EstimateKind::Multilinear;
      const std::string f = format_double(t / (s1 * s2)) + "*x1*x2";
      s.pi = FunctionTuple::euclidean(parse(f, 2), 2);
      s.tree = mixed_derivative_tree({1, 1}, 2);
      s.constraints.domain.axes = {{0, s1}, {0, s2}};
      s.constraints.constraints = {{1, {0, s1}}, {2, {0, s2}}};
      s.ladder = geometric_ladder(0.0625 * t, 0.5, 6);
      s.resolution = 2048;
      const auto r = verify_estimate(s);
      std::vector<double> ratios;
      for (const auto& row : r.rows) ratios.push_back(row.ratio);
      if (reference.empty()) {
        reference = ratios;
      } else {
        for (std::size_t i = 0; i < ratios.size(); ++i) CHECK(rel(ratios[i], reference[i]) < 0.02);
      }
    }
  }
}

TEST_CASE("property: the counterexample family has unit Hessian but growing sublevel sets") {
  double previous = -1.0;
  for (int n : {1, 10, 100}) {
    const std::string f = "(1/" + std::to_string(n) + ")*exp(x1)*sin(" + std::to_string(n) + "*x2)";
    const auto pi = FunctionTuple::euclidean(parse(f, 2), 2);
    const Box box = Box::cube(2, 0, 1);
    const auto inf = inf_abs(apply_tree(hessian_tree(2), pi), box, 256);
    CHECK(std::abs(inf.naive_min - 1.0) < 0.01);
    REQUIRE(inf.certified_lower);
    CHECK(*inf.certified_lower > 0.99);
    const auto m = constrained_measure(pi, ConstraintSet::sublevel(box, 3, 0.1));
    CHECK(m.value >= previous);
    previous = m.value;
    if (n == 100) CHECK(m.value > 0.9);
  }
}

TEST_CASE("property: p composed with a linear form gives a vacuous bound") {
  for (const char* f : {"(x1 + 2*x2)^3", "(x1 - x2 + 1)^4 - 3*(x1 - x2 + 1)", "(2*x1 + x2)^2"}) {
    auto s = sublevel_spec(f, 2, hessian_tree(2), 0, 1);
    s.ladder = geometric_ladder(0.0625, 0.5, 4);
    s.resolution = 128;
    const auto r = verify_estimate(s);
    CHECK(r.operator_vanishes);
    CHECK(r.verdict == EstimateVerdict::Vacuous);
  }
}

TEST_CASE("verify_estimate: oscillatory decay of x1") {
  EstimateSpec s;
  s.kind = EstimateKind::Oscillatory;
  s.pi = FunctionTuple::euclidean(parse("x1", 1), 1);
  s.tree = mixed_derivative_tree({1}, 1);
  s.constraints.domain = Box::cube(1, 0, 1);
  s.ladder = geometric_ladder(16, 2, 8);
  const auto r = verify_estimate(s);
  CHECK(r.predicted_exponent == -1.0);
  CHECK(std::abs(r.fitted_slope + 1.0) < 0.05);
  CHECK(r.verdict == EstimateVerdict::Bounded);
  CHECK(r.converged);
}

TEST_CASE("report writers") {
  auto s = sublevel_spec("x1^2/2", 1, mixed_derivative_tree({2}, 1), -1, 1);
  s.ladder = geometric_ladder(0.0625, 0.5, 4);
  const auto r = verify_estimate(s);
  const std::string csv = to_csv(r);
  CHECK(csv.rfind("parameter,value,error,bound_rhs,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const auto j = nlohmann::json::parse(to_json(r));
  for (const char* key : {"predicted_exponent", "fitted_slope", "C_star", "verdict", "seeds", "resolutions"}) CHECK(j.contains(key));
  CHECK(j.at("verdict") == "bounded");
  CHECK(j.at("C_star").get<double>() == r.c_star);
  CHECK(to_csv(verify_estimate(s)) == csv);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("estimate kind text form") {
  for (auto k : {EstimateKind::Sublevel, EstimateKind::Multilinear, EstimateKind::Oscillatory}) {
    CHECK(parse_estimate_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_estimate_kind("bogus"), DomainError);
}
