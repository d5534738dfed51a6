#pragma once

#include "sublevel/interval.hpp"
#include "sublevel/operators.hpp"
#include "sublevel/tree.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sublevel {

/// Axis-aligned box with finite endpoints and positive volume.
struct Box {
  std::vector<Interval> axes;

  static Box cube(int d, double lo, double hi);
  int d() const noexcept { return static_cast<int>(axes.size()); }
  double volume() const;
  void validate() const;
};

/// pi_function(x) must lie in `range` (closed).
struct Constraint {
  int function = 1;  // 1-based index into the function tuple
  Interval range;
};

/// {x in domain : pi_j(x) in range_j for every constraint}.
struct ConstraintSet {
  Box domain;
  std::vector<Constraint> constraints;

  /// {x in domain : |pi_j(x)| <= eps}.
  static ConstraintSet sublevel(Box domain, int j, double eps);
  void validate(int m) const;
};

/// Worker count for grid chunks, shards and ladder points. Results do not depend on it.
struct Parallelism {
  int threads = 1;
};

enum class MeasureMethod { TensorGrid, MonteCarlo };
std::string_view to_string(MeasureMethod m);

struct MeasureEstimate {
  double value = 0.0;
  /// Grid: volume of the cells whose classification was decided at the midpoint.
  /// Monte Carlo: 99% normal-approximation half width.
  double half_width = 0.0;
  MeasureMethod method = MeasureMethod::TensorGrid;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct MeasureOptions {
  /// Cells per axis for the tensor grid; 0 picks a default for the dimension.
  long resolution = 0;
  std::uint64_t samples = 1'000'000;  // Monte Carlo, d >= 4
  std::uint64_t seed = 1;
  Parallelism parallel;
};

long default_measure_resolution(int d);

/// Tensor-grid midpoint counting for d <= 3 (blocks whose interval enclosure
/// decides the constraints are counted without evaluation), seeded Monte Carlo for d >= 4.
MeasureEstimate constrained_measure(const FunctionTuple& pi, const ConstraintSet& c, const MeasureOptions& options = {});

struct InfimumEstimate {
  double naive_min = 0.0;
  std::vector<double> argmin;
  /// Lower bound for inf |e| over the box from interval and mean-value bounds;
  /// empty when the gradient admits no finite interval bound.
  std::optional<double> certified_lower;
};

long default_inf_resolution(int d);

/// Minimum of |e| over the cell midpoints of a resolution^d grid, by branch and bound.
InfimumEstimate inf_abs(const Expr& e, const Box& box, long resolution = 0, const Parallelism& parallel = {});

struct OscillatoryOptions {
  double tol = 1e-8;
  int max_panels = 64;           // per axis and cell before the cell is split
  std::size_t max_cells = 2'000'000;
  int max_depth = 40;
  Parallelism parallel;
};

struct OscillatoryResult {
  std::complex<double> value;
  double error = 0.0;
  bool converged = true;
  std::size_t cells = 0;
  std::uint64_t evaluations = 0;
};

/// Integral of exp(i lambda pi_phase) over the constraint set. Cells inside the
/// set use product Gauss-Legendre (orders 10 and 8 for the error estimate) with
/// panel counts proportional to |lambda| * width * phase-gradient bound; cells
/// straddling its boundary are bisected until their total volume is below tol.
OscillatoryResult oscillatory_integral(const FunctionTuple& pi, int phase, const ConstraintSet& c, double lambda,
                                       const OscillatoryOptions& options = {});

struct DecayFit {
  std::vector<std::pair<double, double>> samples;
  double slope = 0.0;
  double intercept = 0.0;
  double predicted_exponent = 0.0;
  double max_ratio_constant = 0.0;
  std::vector<double> ratios;
  bool violation = false;
};

/// Least-squares fit of log value against log parameter. The samples are taken
/// in ladder order (toward the asymptotic regime); `violation` is set when
/// value / parameter^predicted grows by more than 5% per octave across the last half.
DecayFit fit_decay(std::vector<std::pair<double, double>> samples, double predicted_exponent);

enum class EstimateKind { Sublevel, Multilinear, Oscillatory };
std::string_view to_string(EstimateKind k);
EstimateKind parse_estimate_kind(std::string_view s);

enum class EstimateVerdict { Bounded, Violation, Vacuous };
std::string_view to_string(EstimateVerdict v);

/// Geometric ladder start * ratio^k, k = 0..count-1.
std::vector<double> geometric_ladder(double start, double ratio, int count);

struct EstimateSpec {
  EstimateKind kind = EstimateKind::Sublevel;
  FunctionTuple pi;
  DTree tree;
  /// Template: the domain, and for multilinear/oscillatory runs the fixed sets E_j.
  ConstraintSet constraints;
  /// Function whose set is scaled along the ladder (sublevel/multilinear: [-eps, eps]),
  /// or the phase (oscillatory). 0 means m.
  int ladder_function = 0;
  std::vector<double> ladder;
  long resolution = 0;
  long inf_resolution = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  /// Oscillatory: |I| is replaced by its maximum over lambda * 2^{s/W}, s < W.
  int envelope = 8;
  double tol = 1e-9;
  Parallelism parallel;
};

struct LadderRow {
  double parameter = 0.0;
  double value = 0.0;
  double error = 0.0;
  double bound_rhs = 0.0;
  double ratio = 0.0;
};

struct EstimateReport {
  EstimateKind kind = EstimateKind::Sublevel;
  std::string tree;
  int order = 0;
  std::vector<int> leaf_counts;
  double predicted_exponent = 0.0;
  double fitted_slope = 0.0;
  double c_star = 0.0;
  EstimateVerdict verdict = EstimateVerdict::Vacuous;
  double inf_naive = 0.0;
  std::optional<double> inf_certified;
  bool operator_vanishes = false;
  bool converged = true;
  std::vector<LadderRow> rows;
  std::vector<std::uint64_t> seeds;
  std::vector<long> resolutions;
};

/// Runs the ladder, fits the decay and compares it against the right-hand side
///   inf|d^G pi|^{-1/#G} * prod_j |E_j|^{G^(j)/#G}
/// (|E_j| = 2 eps for the ladder set, lambda^{-G^(m)/#G} for the phase).
EstimateReport verify_estimate(const EstimateSpec& spec);

/// One row per ladder point: parameter,value,error,bound_rhs,ratio.
std::string to_csv(const EstimateReport& report);
/// {predicted_exponent, fitted_slope, C_star, verdict, seeds, resolutions, ...}.
std::string to_json(const EstimateReport& report);

/// Round-trip-exact text for a double (printf "%.17g").
std::string format_double(double x);

}  // namespace sublevel
