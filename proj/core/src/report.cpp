#include "sublevel/error.hpp"
#include "sublevel/numerics.hpp"

#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sublevel {

std::string_view to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Sublevel:
      return "sublevel";
    case EstimateKind::Multilinear:
      return "multilinear";
    case EstimateKind::Oscillatory:
      return "oscillatory";
  }
  return "sublevel";
}

EstimateKind parse_estimate_kind(std::string_view s) {
  if (s == "sublevel") return EstimateKind::Sublevel;
  if (s == "multilinear") return EstimateKind::Multilinear;
  if (s == "oscillatory") return EstimateKind::Oscillatory;
  throw DomainError("unknown estimate kind '" + std::string(s) + "'");
}

std::string_view to_string(EstimateVerdict v) {
  switch (v) {
    case EstimateVerdict::Bounded:
      return "bounded";
    case EstimateVerdict::Violation:
      return "violation";
    case EstimateVerdict::Vacuous:
      return "vacuous";
  }
  return "vacuous";
}

std::vector<double> geometric_ladder(double start, double ratio, int count) {
  if (!(start > 0.0) || !(ratio > 0.0) || count < 1) throw DomainError("invalid geometric ladder");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(start * std::pow(ratio, k));
  return out;
}

namespace {

// |E_j| for a set held fixed along the ladder: its template interval, or the
// range of pi_j over the domain when unconstrained.
double fixed_set_size(const EstimateSpec& spec, int j) {
  double size = std::numeric_limits<double>::infinity();
  bool constrained = false;
  for (const auto& c : spec.constraints.constraints) {
    if (c.function != j) continue;
    constrained = true;
    size = std::min(size, c.range.width());
  }
  const Interval hull = eval_interval(simplify(spec.pi.exprs[static_cast<std::size_t>(j - 1)]), spec.constraints.domain.axes);
  if (!constrained || hull.width() < size) size = hull.width();
  return size;
}

}  // namespace

EstimateReport verify_estimate(const EstimateSpec& spec) {
  spec.pi.validate();
  const int d = spec.pi.d;
  const int m = spec.pi.m();
  spec.constraints.validate(m);
  if (spec.constraints.domain.d() != d) throw DomainError("domain dimension differs from the function tuple");
  const TreeStats st = stats(spec.tree, d, m);
  if (st.order == 0) throw DomainError("verify_estimate needs a tree with at least one internal node");
  const int j = spec.ladder_function == 0 ? m : spec.ladder_function;
  if (j < 1 || j > m) throw DomainError("ladder function outside 1..m");
  if (spec.ladder.size() < 4) throw DomainError("the ladder needs at least 4 points");
  for (double p : spec.ladder) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("ladder parameters must be positive");
  }

  EstimateReport report;
  report.kind = spec.kind;
  report.tree = to_string(spec.tree);
  report.order = st.order;
  report.leaf_counts = st.leaf_counts;
  const double order = st.order;
  const double gj = st.leaf_counts[static_cast<std::size_t>(j - 1)];
  report.predicted_exponent = (spec.kind == EstimateKind::Oscillatory ? -gj : gj) / order;

  const Expr op = apply_tree(spec.tree, spec.pi);
  report.operator_vanishes = zero_test(op).verdict == Verdict::Zero;
  double inf = 0.0;
  if (!report.operator_vanishes) {
    const InfimumEstimate est = inf_abs(op, spec.constraints.domain, spec.inf_resolution, spec.parallel);
    report.inf_naive = est.naive_min;
    report.inf_certified = est.certified_lower;
    inf = est.certified_lower.value_or(est.naive_min);
  }
  const bool vacuous = report.operator_vanishes || !(inf > 0.0);

  double prefactor = vacuous ? std::numeric_limits<double>::infinity() : std::pow(inf, -1.0 / order);
  for (int k = 1; k <= m; ++k) {
    const int leaves = st.leaf_counts[static_cast<std::size_t>(k - 1)];
    if (k == j || leaves == 0) continue;
    prefactor *= std::pow(fixed_set_size(spec, k), leaves / order);
  }

  const std::size_t n = spec.ladder.size();
  report.rows.resize(n);
  std::vector<char> converged(n, 1);
  detail::parallel_for(n, spec.parallel.threads, [&](std::size_t i) {
    const double p = spec.ladder[i];
    LadderRow& row = report.rows[i];
    row.parameter = p;
    if (spec.kind == EstimateKind::Oscillatory) {
      OscillatoryOptions options;
      options.tol = spec.tol;
      const int w = std::max(1, spec.envelope);
      for (int s = 0; s < w; ++s) {
        const double mu = p * std::exp2(static_cast<double>(s) / w);
        const OscillatoryResult r = oscillatory_integral(spec.pi, j, spec.constraints, mu, options);
        row.value = std::max(row.value, std::abs(r.value));
        row.error = std::max(row.error, r.error);
        if (!r.converged) converged[i] = 0;
      }
      row.bound_rhs = prefactor * std::pow(p, -gj / order);
    } else {
      ConstraintSet c = spec.constraints;
      std::erase_if(c.constraints, [&](const Constraint& k) { return k.function == j; });
      c.constraints.push_back({j, {-p, p}});
      MeasureOptions options;
      options.resolution = spec.resolution;
      options.samples = spec.samples;
      options.seed = spec.seed;
      const MeasureEstimate e = constrained_measure(spec.pi, c, options);
      row.value = e.value;
      row.error = e.half_width;
      row.bound_rhs = prefactor * std::pow(2.0 * p, gj / order);
    }
    row.ratio = row.value / row.bound_rhs;
  });
  report.converged = std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });

  std::vector<std::pair<double, double>> samples;
  for (const auto& row : report.rows) {
    report.c_star = std::max(report.c_star, row.ratio);
    if (row.value > 0.0) samples.emplace_back(row.parameter, row.value);
  }
  bool violation = false;
  report.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  if (samples.size() >= 4) {
    const DecayFit fit = fit_decay(samples, report.predicted_exponent);
    report.fitted_slope = fit.slope;
    violation = fit.violation;
  }
  report.verdict = vacuous ? EstimateVerdict::Vacuous : violation ? EstimateVerdict::Violation : EstimateVerdict::Bounded;
  report.seeds = {spec.seed};
  report.resolutions = {spec.resolution > 0 ? spec.resolution : default_measure_resolution(d),
                        spec.inf_resolution > 0 ? spec.inf_resolution : default_inf_resolution(d)};
  return report;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const EstimateReport& report) {
  std::string out = "parameter,value,error,bound_rhs,ratio\n";
  for (const auto& r : report.rows) {
    out += format_double(r.parameter) + ',' + format_double(r.value) + ',' + format_double(r.error) + ',' +
           format_double(r.bound_rhs) + ',' + format_double(r.ratio) + '\n';
  }
  return out;
}

std::string to_json(const EstimateReport& report) {
  using nlohmann::ordered_json;
  auto number = [](double x) -> ordered_json {
    if (!std::isfinite(x)) return nullptr;
    return x;
  };
  ordered_json j;
  j["kind"] = std::string(to_string(report.kind));
  j["tree"] = report.tree;
  j["order"] = report.order;
  j["leaf_counts"] = report.leaf_counts;
  j["predicted_exponent"] = number(report.predicted_exponent);
  j["fitted_slope"] = number(report.fitted_slope);
  j["C_star"] = number(report.c_star);
  j["verdict"] = std::string(to_string(report.verdict));
  j["inf_naive"] = number(report.inf_naive);
  j["inf_certified"] = report.inf_certified ? number(*report.inf_certified) : ordered_json(nullptr);
  j["operator_vanishes"] = report.operator_vanishes;
  j["converged"] = report.converged;
  j["seeds"] = report.seeds;
  j["resolutions"] = report.resolutions;
  return j.dump(2) + "\n";
}

}  // namespace sublevel
