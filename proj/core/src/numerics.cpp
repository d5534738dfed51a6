#include "sublevel/numerics.hpp"

#include "parallel.hpp"
#include "sublevel/error.hpp"
#include "sublevel/rng.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sublevel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Decision { Inside, Outside, Unknown };

struct Test {
  Expr expr;
  Interval range;
};

std::vector<Test> tests_of(const FunctionTuple& pi, const ConstraintSet& c) {
  std::vector<Test> out;
  for (const auto& k : c.constraints) out.push_back({simplify(pi.exprs[static_cast<std::size_t>(k.function - 1)]), k.range});
  return out;
}

Decision classify(const std::vector<Test>& tests, std::span<const Interval> box) {
  bool inside = true;
  for (const auto& t : tests) {
    const Interval v = eval_interval(t.expr, box);
    if (!v.is_valid()) {
      inside = false;
      continue;
    }
    if (v.hi < t.range.lo || v.lo > t.range.hi) return Decision::Outside;
    if (!(t.range.lo <= v.lo && v.hi <= t.range.hi)) inside = false;
  }
  return inside ? Decision::Inside : Decision::Unknown;
}

bool satisfied(const std::vector<Test>& tests, std::span<const double> x) {
  for (const auto& t : tests) {
    if (!t.range.contains(eval(t.expr, x))) return false;
  }
  return true;
}

// Uniform grid of resolution^d cells over a box, addressed by integer index ranges.
struct Grid {
  const std::vector<Interval>& axes;
  long resolution;
  std::vector<double> h;

  Grid(const std::vector<Interval>& a, long r) : axes(a), resolution(r) {
    for (const auto& iv : axes) h.push_back(iv.width() / static_cast<double>(r));
  }

  int d() const { return static_cast<int>(axes.size()); }

  double coordinate(std::size_t axis, long i) const {
    return i == resolution ? axes[axis].hi : axes[axis].lo + static_cast<double>(i) * h[axis];
  }

  void extent(std::span<const long> lo, std::span<const long> hi, std::vector<Interval>& out) const {
    out.resize(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
      out[a] = {std::nextafter(coordinate(a, lo[a]), -kInf), std::nextafter(coordinate(a, hi[a]), kInf)};
    }
  }

  void midpoint(std::span<const long> lo, std::vector<double>& out) const {
    out.resize(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
      out[a] = axes[a].lo + (static_cast<double>(lo[a]) + 0.5) * h[a];
    }
  }

  double cell_volume() const {
    double v = 1.0;
    for (double x : h) v *= x;
    return v;
  }

  // Axis with the most cells in the block.
  static std::size_t widest(std::span<const long> lo, std::span<const long> hi) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < lo.size(); ++a) {
      if (hi[a] - lo[a] > hi[best] - lo[best]) best = a;
    }
    return best;
  }
};

struct GridCount {
  std::uint64_t inside = 0;
  std::uint64_t undecided = 0;
};

void count_block(const Grid& g, const std::vector<Test>& tests, std::vector<long> lo, std::vector<long> hi,
                 GridCount& tally) {
  std::vector<Interval> box;
  g.extent(lo, hi, box);
  std::uint64_t cells = 1;
  for (std::size_t a = 0; a < lo.size(); ++a) cells *= static_cast<std::uint64_t>(hi[a] - lo[a]);
  switch (classify(tests, box)) {
    case Decision::Inside:
      tally.inside += cells;
      return;
    case Decision::Outside:
      return;
    case Decision::Unknown:
      break;
  }
  if (cells == 1) {
    std::vector<double> x;
    g.midpoint(lo, x);
    if (satisfied(tests, x)) ++tally.inside;
    ++tally.undecided;
    return;
  }
  const std::size_t a = Grid::widest(lo, hi);
  const long split = lo[a] + (hi[a] - lo[a]) / 2;
  std::vector<long> mid_hi = hi, mid_lo = lo;
  mid_hi[a] = split;
  mid_lo[a] = split;
  count_block(g, tests, lo, mid_hi, tally);
  count_block(g, tests, mid_lo, hi, tally);
}

// Fixed chunking of the first axis so results do not depend on the thread count.
std::vector<std::pair<long, long>> chunks(long resolution, long max_chunks) {
  const long n = std::min(resolution, max_chunks);
  std::vector<std::pair<long, long>> out;
  for (long k = 0; k < n; ++k) out.emplace_back(resolution * k / n, resolution * (k + 1) / n);
  return out;
}

}  // namespace

Box Box::cube(int d, double lo, double hi) {
  if (d < 1) throw DomainError("box dimension must be >= 1");
  Box b;
  b.axes.assign(static_cast<std::size_t>(d), Interval{lo, hi});
  b.validate();
  return b;
}

double Box::volume() const {
  double v = 1.0;
  for (const auto& a : axes) v *= a.width();
  return v;
}

void Box::validate() const {
  if (axes.empty()) throw DomainError("box has no axes");
  for (const auto& a : axes) {
    if (!a.is_finite() || !(a.lo < a.hi)) throw DomainError("box axes must be finite with a < b");
  }
}

ConstraintSet ConstraintSet::sublevel(Box domain, int j, double eps) {
  if (!(eps >= 0.0)) throw DomainError("sublevel threshold must be >= 0");
  return {std::move(domain), {{j, {-eps, eps}}}};
}

void ConstraintSet::validate(int m) const {
  domain.validate();
  for (const auto& c : constraints) {
    if (c.function < 1 || c.function > m) throw DomainError("constraint refers to a function outside 1..m");
    if (!c.range.is_valid()) throw DomainError("constraint interval is empty");
  }
}

std::string_view to_string(MeasureMethod m) {
  return m == MeasureMethod::TensorGrid ? "tensor-grid" : "monte-carlo";
}

long default_measure_resolution(int d) {
  switch (d) {
    case 1:
      return 1'000'000;
    case 2:
      return 4096;
    default:
      return 256;
  }
}

MeasureEstimate constrained_measure(const FunctionTuple& pi, const ConstraintSet& c, const MeasureOptions& options) {
  pi.validate();
  c.validate(pi.m());
  if (c.domain.d() != pi.d) throw DomainError("constraint domain dimension differs from the function tuple");
  const std::vector<Test> tests = tests_of(pi, c);
  const int d = pi.d;
  MeasureEstimate out;
  out.seed = options.seed;

  if (d <= 3) {
    const long r = options.resolution > 0 ? options.resolution : default_measure_resolution(d);
    if (r < 2) throw DomainError("grid resolution must be >= 2");
    const Grid grid(c.domain.axes, r);
    const auto parts = chunks(r, 64);
    std::vector<GridCount> tallies(parts.size());
    detail::parallel_for(parts.size(), options.parallel.threads, [&](std::size_t k) {
      std::vector<long> lo(static_cast<std::size_t>(d), 0), hi(static_cast<std::size_t>(d), r);
      lo[0] = parts[k].first;
      hi[0] = parts[k].second;
      count_block(grid, tests, lo, hi, tallies[k]);
    });
    GridCount total;
    for (const auto& t : tallies) {
      total.inside += t.inside;
      total.undecided += t.undecided;
    }
    const double cell = grid.cell_volume();
    out.method = MeasureMethod::TensorGrid;
    out.value = static_cast<double>(total.inside) * cell;
    out.half_width = static_cast<double>(total.undecided) * cell;
    out.samples = 1;
    for (int a = 0; a < d; ++a) out.samples *= static_cast<std::uint64_t>(r);
    return out;
  }

  if (options.samples < 1000) throw DomainError("Monte Carlo needs at least 1000 samples");
  constexpr std::uint64_t kShard = 1 << 15;
  const std::uint64_t shards = (options.samples + kShard - 1) / kShard;
  std::vector<std::uint64_t> hits(shards, 0);
  detail::parallel_for(shards, options.parallel.threads, [&](std::size_t s) {
    Rng rng(mix_seed(options.seed, s));
    const std::uint64_t n = std::min(kShard, options.samples - s * kShard);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::uint64_t i = 0; i < n; ++i) {
      for (int a = 0; a < d; ++a) {
        const Interval& ax = c.domain.axes[static_cast<std::size_t>(a)];
        x[static_cast<std::size_t>(a)] = rng.uniform(ax.lo, ax.hi);
      }
      if (satisfied(tests, x)) ++hits[s];
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double vol = c.domain.volume();
  const double n = static_cast<double>(options.samples);
  const double p = static_cast<double>(total) / n;
  out.method = MeasureMethod::MonteCarlo;
  out.value = vol * p;
  out.half_width = 2.5758293035489004 * vol * std::sqrt(p * (1.0 - p) / n);
  out.samples = options.samples;
  return out;
}

long default_inf_resolution(int d) {
  switch (d) {
    case 1:
      return 4096;
    case 2:
      return 256;
    default:
      return 64;
  }
}

namespace {

struct InfSearch {
  const Grid& grid;
  Expr e;
  std::vector<Expr> gradient;
  bool use_gradient = false;

  struct State {
    double best = kInf;
    std::vector<long> best_index;
    std::vector<double> best_point;
    double certified = kInf;
  };

  // sup |x - center| * sup |grad| summed per axis over the block.
  double mean_value_slack(std::span<const Interval> box) const {
    double slack = 0.0;
    for (std::size_t a = 0; a < gradient.size(); ++a) {
      const double g = eval_interval(gradient[a], box).magnitude();
      if (!std::isfinite(g)) return kInf;
      slack += g * 0.5 * box[a].width();
    }
    return slack;
  }

  void run(std::vector<long> lo, std::vector<long> hi, State& s) const {
    std::vector<Interval> box;
    grid.extent(lo, hi, box);
    const Interval v = eval_interval(e, box);
    double lb = v.is_valid() ? v.mignitude() : 0.0;
    const double slack = use_gradient ? mean_value_slack(box) : kInf;

    bool single = true;
    for (std::size_t a = 0; a < lo.size(); ++a) single = single && hi[a] - lo[a] == 1;
    if (single) {
      std::vector<double> x;
      grid.midpoint(lo, x);
      const double val = std::abs(eval(e, x));
      if (val < s.best || (val == s.best && lo < s.best_index)) {
        s.best = val;
        s.best_index = lo;
        s.best_point = x;
      }
      s.certified = std::min(s.certified, std::max(lb, val - slack));
      return;
    }
    if (std::isfinite(slack)) {
      std::vector<double> center(box.size());
      for (std::size_t a = 0; a < box.size(); ++a) center[a] = box[a].mid();
      const double c = std::abs(eval_unchecked(e, center));
      if (std::isfinite(c)) lb = std::max(lb, c - slack);
    }
    if (lb > s.best) {
      s.certified = std::min(s.certified, lb);
      return;
    }
    const std::size_t a = Grid::widest(lo, hi);
    const long split = lo[a] + (hi[a] - lo[a]) / 2;
    std::vector<long> mid_hi = hi, mid_lo = lo;
    mid_hi[a] = split;
    mid_lo[a] = split;
    run(lo, mid_hi, s);
    run(mid_lo, hi, s);
  }
};

}  // namespace

InfimumEstimate inf_abs(const Expr& e, const Box& box, long resolution, const Parallelism& parallel) {
  box.validate();
  const int d = box.d();
  if (max_variable(e) > d) throw DomainError("expression uses a variable beyond the box dimension");
  const long r = resolution > 0 ? resolution : default_inf_resolution(d);
  const Grid grid(box.axes, r);

  InfSearch search{grid, simplify(e), {}, true};
  for (int i = 1; i <= d; ++i) search.gradient.push_back(diff(search.e, i));
  for (const auto& g : search.gradient) {
    if (!eval_interval(g, box.axes).is_finite()) search.use_gradient = false;
  }

  const auto parts = chunks(r, 16);
  std::vector<InfSearch::State> states(parts.size());
  detail::parallel_for(parts.size(), parallel.threads, [&](std::size_t k) {
    std::vector<long> lo(static_cast<std::size_t>(d), 0), hi(static_cast<std::size_t>(d), r);
    lo[0] = parts[k].first;
    hi[0] = parts[k].second;
    search.run(lo, hi, states[k]);
  });

  InfimumEstimate out;
  out.naive_min = kInf;
  double certified = kInf;
  for (const auto& s : states) {
    if (s.best < out.naive_min) {
      out.naive_min = s.best;
      out.argmin = s.best_point;
    }
    certified = std::min(certified, s.certified);
  }
  if (search.use_gradient) out.certified_lower = std::max(0.0, certified);
  return out;
}

namespace {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

template <unsigned N>
Rule gauss_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

struct Oscillator {
  Expr phase;
  std::vector<Expr> gradient;
  std::vector<Test> tests;
  double lambda = 0.0;
  double domain_volume = 1.0;
  OscillatoryOptions options;
  Rule high = gauss_rule<10>();
  Rule low = gauss_rule<8>();

  std::complex<double> sum;
  double error = 0.0;
  std::size_t cells = 0;
  std::uint64_t evaluations = 0;
  bool converged = true;

  static double volume(std::span<const Interval> cell) {
    double v = 1.0;
    for (const auto& a : cell) v *= a.width();
    return v;
  }

  std::complex<double> quadrature(std::span<const Interval> cell, const std::vector<long>& panels, const Rule& rule) {
    const std::size_t d = cell.size();
    const std::size_t q = rule.nodes.size();
    std::vector<long> panel(d, 0);
    std::vector<std::size_t> node(d, 0);
    std::vector<double> x(d);
    std::complex<double> total;
    for (;;) {
      std::fill(node.begin(), node.end(), 0);
      for (;;) {
        double w = 1.0;
        for (std::size_t a = 0; a < d; ++a) {
          const double h = cell[a].width() / static_cast<double>(panels[a]);
          const double left = cell[a].lo + static_cast<double>(panel[a]) * h;
          x[a] = left + 0.5 * h * (rule.nodes[node[a]] + 1.0);
          w *= 0.5 * h * rule.weights[node[a]];
        }
        total += w * std::polar(1.0, lambda * eval(phase, x));
        ++evaluations;
        std::size_t a = 0;
        while (a < d && ++node[a] == q) node[a++] = 0;
        if (a == d) break;
      }
      std::size_t a = 0;
      while (a < d && ++panel[a] == panels[a]) panel[a++] = 0;
      if (a == d) break;
    }
    return total;
  }

  void bisect(std::vector<Interval> cell, std::size_t axis, int depth) {
    const double m = cell[axis].mid();
    std::vector<Interval> upper = cell;
    cell[axis].hi = m;
    upper[axis].lo = m;
    inside(cell, depth + 1);
    inside(upper, depth + 1);
  }

  void inside(const std::vector<Interval>& cell, int depth) {
    if (++cells > options.max_cells) {
      converged = false;
      return;
    }
    const std::size_t d = cell.size();
    std::vector<long> panels(d, 1);
    std::size_t busiest = 0;
    long total = 1;
    bool bounded = true;
    for (std::size_t a = 0; a < d; ++a) {
      const double g = eval_interval(gradient[a], cell).magnitude();
      if (!std::isfinite(g)) {
        bounded = false;
        busiest = a;
        continue;
      }
      const double p = std::ceil(std::abs(lambda) * cell[a].width() * g / std::numbers::pi);
      panels[a] = std::max(1L, static_cast<long>(std::min(p, 1e9)));
      if (panels[a] > panels[busiest]) busiest = a;
      total *= panels[a];
    }
    if ((!bounded || total > options.max_panels) && depth < options.max_depth) {
      bisect(cell, busiest, depth);
      return;
    }
    if (!bounded) {
      converged = false;
      return;
    }
    const std::complex<double> q_high = quadrature(cell, panels, high);
    const std::complex<double> q_low = quadrature(cell, panels, low);
    const double e = std::abs(q_high - q_low);
    if (e > options.tol * volume(cell) / domain_volume && depth < options.max_depth) {
      std::size_t a = 0;
      for (std::size_t k = 1; k < d; ++k) {
        if (cell[k].width() > cell[a].width()) a = k;
      }
      bisect(cell, a, depth);
      return;
    }
    sum += q_high;
    error += e;
  }
};

}  // namespace

OscillatoryResult oscillatory_integral(const FunctionTuple& pi, int phase, const ConstraintSet& c, double lambda,
                                       const OscillatoryOptions& options) {
  pi.validate();
  c.validate(pi.m());
  if (c.domain.d() != pi.d) throw DomainError("constraint domain dimension differs from the function tuple");
  if (phase < 1 || phase > pi.m()) throw DomainError("phase index outside 1..m");
  if (!(options.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");

  Oscillator osc;
  osc.phase = simplify(pi.exprs[static_cast<std::size_t>(phase - 1)]);
  osc.tests = tests_of(pi, c);
  osc.lambda = lambda;
  osc.domain_volume = c.domain.volume();
  osc.options = options;
  for (int i = 1; i <= pi.d; ++i) osc.gradient.push_back(diff(osc.phase, i));

  const std::size_t d = static_cast<std::size_t>(pi.d);
  std::vector<std::vector<Interval>> straddling;
  auto visit = [&](const std::vector<Interval>& cell, int depth) {
    switch (classify(osc.tests, cell)) {
      case Decision::Inside:
        osc.inside(cell, depth);
        break;
      case Decision::Outside:
        break;
      case Decision::Unknown:
        straddling.push_back(cell);
        break;
    }
  };
  visit(c.domain.axes, 0);

  for (int depth = 1;; ++depth) {
    double open = 0.0;
    for (const auto& cell : straddling) open += Oscillator::volume(cell);
    if (open <= options.tol) break;
    if (depth > options.max_depth || osc.cells + (straddling.size() << d) > options.max_cells) {
      osc.converged = false;
      break;
    }
    std::vector<std::vector<Interval>> parents;
    parents.swap(straddling);
    for (const auto& cell : parents) {
      for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
        std::vector<Interval> child = cell;
        for (std::size_t a = 0; a < d; ++a) {
          const double m = cell[a].mid();
          if (corner >> a & 1) {
            child[a].lo = m;
          } else {
            child[a].hi = m;
          }
        }
        ++osc.cells;
        visit(child, depth);
      }
    }
  }

  // Unresolved boundary cells: midpoint rule, error bounded by their volume.
  for (const auto& cell : straddling) {
    std::vector<double> x(d);
    for (std::size_t a = 0; a < d; ++a) x[a] = cell[a].mid();
    const double v = Oscillator::volume(cell);
    if (satisfied(osc.tests, x)) osc.sum += v * std::polar(1.0, lambda * eval(osc.phase, x));
    osc.error += v;
    ++osc.evaluations;
  }

  OscillatoryResult out;
  out.value = osc.sum;
  out.error = osc.error;
  out.converged = osc.converged && osc.error <= 2.0 * options.tol;
  out.cells = osc.cells;
  out.evaluations = osc.evaluations;
  return out;
}

DecayFit fit_decay(std::vector<std::pair<double, double>> samples, double predicted_exponent) {
  const std::size_t n = samples.size();
  if (n < 4) throw DomainError("fit_decay needs at least 4 samples");
  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, v] = samples[i];
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("fit_decay needs positive parameters");
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("fit_decay needs positive values");
    for (std::size_t j = 0; j < i; ++j) {
      if (samples[j].first == p) throw DomainError("fit_decay needs distinct parameters");
    }
  }
  DecayFit fit;
  fit.predicted_exponent = predicted_exponent;

  double mx = 0.0, my = 0.0;
  for (const auto& [p, v] : samples) {
    mx += std::log(p);
    my += std::log(v);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [p, v] : samples) {
    sxx += (std::log(p) - mx) * (std::log(p) - mx);
    sxy += (std::log(p) - mx) * (std::log(v) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  for (const auto& [p, v] : samples) {
    fit.ratios.push_back(v / std::pow(p, predicted_exponent));
    fit.max_ratio_constant = std::max(fit.max_ratio_constant, fit.ratios.back());
  }

  // Trend of log2(ratio) per octave travelled along the last half of the ladder.
  const std::size_t start = n / 2;
  double mt = 0.0, mr = 0.0;
  const double h = static_cast<double>(n - start);
  for (std::size_t k = start; k < n; ++k) {
    mt += std::abs(std::log2(samples[k].first / samples[start].first));
    mr += std::log2(fit.ratios[k]);
  }
  mt /= h;
  mr /= h;
  double stt = 0.0, str = 0.0;
  for (std::size_t k = start; k < n; ++k) {
    const double t = std::abs(std::log2(samples[k].first / samples[start].first)) - mt;
    stt += t * t;
    str += t * (std::log2(fit.ratios[k]) - mr);
  }
  fit.violation = stt > 0.0 && str / stt > std::log2(1.05);
  fit.samples = std::move(samples);
  return fit;
}

}  // namespace sublevel
