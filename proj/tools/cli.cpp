#include "cli.hpp"

#include "config.hpp"
#include "sublevel/error.hpp"
#include "sublevel/numerics.hpp"
#include "sublevel/operators.hpp"
#include "sublevel/pfaffian.hpp"
#include "sublevel/tree.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace sublevel::cli {
namespace {

std::string join(const std::vector<int>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + ")";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw DomainError("failed writing '" + path + "'");
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

Box box_of(const std::vector<std::array<double, 2>>& axes) {
  Box b;
  for (const auto& a : axes) b.axes.push_back({a[0], a[1]});
  b.validate();
  return b;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int threads = 1;
  int status = kPass;
};

void add_tree_commands(CLI::App& app, Context& ctx) {
  auto* tree = app.add_subcommand("tree", "d-tree statistics, enumeration and shape graphs");
  tree->require_subcommand(1);

  struct TreeArgs {
    std::string text;
    int d = 2;
    int m = 3;
    int max_depth = 2;
    std::size_t limit = 100000;
    std::string output;
  };
  auto args = std::make_shared<TreeArgs>();

  auto* st = tree->add_subcommand("stats", "Order #G, leaf counts G^(j), depth and vertex counts");
  st->add_option("tree", args->text, "Bracketed tree, e.g. \"((3,2),(1,3))\"")->required();
  st->add_option("--d", args->d, "Arity of internal nodes")->capture_default_str();
  st->add_option("--m", args->m, "Number of leaf indices")->capture_default_str();
  st->callback([args, &ctx] {
    const DTree g = parse_tree(args->text);
    const TreeStats s = stats(g, args->d, args->m);
    ctx.out << "tree " << to_string(g) << "\n"
            << "order " << s.order << "\n"
            << "leaf_counts " << join(s.leaf_counts) << "\n"
            << "depth " << s.depth << "\n"
            << "vertices " << s.vertex_count << "\n"
            << "leaves " << s.leaf_count << "\n";
  });

  auto* en = tree->add_subcommand("enum", "Canonical trees of depth 1..maxK, one per line");
  en->add_option("--d", args->d, "Arity of internal nodes")->capture_default_str();
  en->add_option("--m", args->m, "Number of leaf indices")->capture_default_str();
  en->add_option("--max-depth", args->max_depth, "Largest depth K")->capture_default_str()->check(CLI::Range(1, 4));
  en->add_option("--limit", args->limit, "Stop after this many trees")->capture_default_str();
  en->callback([args, &ctx] {
    if (args->d > 4) throw DomainError("enumeration is limited to d <= 4");
    const TreeEnumeration e = enumerate_canonical(args->d, args->m, args->max_depth, args->limit);
    for (const auto& g : e.trees) ctx.out << to_string(g) << "\n";
    if (e.truncated) ctx.err << "note: truncated at " << e.trees.size() << " trees\n";
  });

  auto* dot = tree->add_subcommand("dot", "Shape graph in Graphviz DOT");
  dot->add_option("tree", args->text, "Bracketed tree")->required();
  dot->add_option("--d", args->d, "Arity of internal nodes")->capture_default_str();
  dot->add_option("--m", args->m, "Number of leaf indices")->capture_default_str();
  dot->add_option("-o,--output", args->output, "Output file (default: stdout)");
  dot->callback([args, &ctx] { emit(ctx.out, args->output, to_dot(parse_tree(args->text), args->d, args->m)); });
}

void add_op_commands(CLI::App& app, Context& ctx) {
  auto* op = app.add_subcommand("op", "Admissible operator recipes");
  op->require_subcommand(1);

  struct OpArgs {
    std::string recipe;
    int d = 2;
    std::string f;
    int trials = 50;
    std::uint64_t seed = 1;
    std::size_t node_limit = 1'000'000;
  };
  auto args = std::make_shared<OpArgs>();
  auto common = [args](CLI::App* c, bool needs_f) {
    c->add_option("recipe", args->recipe, "Recipe text, e.g. \"det[1,2](det[1](id),det[2](id))\"")->required();
    c->add_option("--d", args->d, "Dimension")->capture_default_str();
    if (needs_f) c->add_option("--f", args->f, "Function F in the expression grammar")->required();
  };

  auto* type = op->add_subcommand("type", "Type (alpha, beta) and order |beta| + 1 - alpha");
  common(type, false);
  type->callback([args, &ctx] {
    const OperatorRecipe r = parse_recipe(args->recipe);
    const OperatorType t = type_of_recipe(r, args->d);
    ctx.out << "alpha " << t.alpha << "\nbeta " << join(t.beta) << "\norder " << t.order() << "\ntree "
            << to_string(tree_of_recipe(r, args->d)) << "\n";
  });

  auto* apply = op->add_subcommand("apply", "The function LF in canonical form");
  common(apply, true);
  apply->add_option("--node-limit", args->node_limit, "Abort above this expression size")->capture_default_str();
  apply->callback([args, &ctx] {
    ApplyOptions options;
    options.node_limit = args->node_limit;
    ctx.out << to_string(apply_recipe(parse_recipe(args->recipe), parse(args->f, args->d), args->d, options)) << "\n";
  });

  auto* equiv = op->add_subcommand("equiv", "Check LF = +-d^G pi for the tree of the recipe (exit 1 on mismatch)");
  common(equiv, true);
  equiv->add_option("--trials", args->trials, "Sample points for the zero test")->capture_default_str();
  equiv->add_option("--seed", args->seed, "Seed of the sample points")->capture_default_str();
  equiv->callback([args, &ctx] {
    ZeroTestOptions options;
    options.trials = args->trials;
    options.seed = args->seed;
    const OperatorRecipe r = parse_recipe(args->recipe);
    const EquivalenceResult e = recipe_tree_equivalence(r, parse(args->f, args->d), args->d, options);
    ctx.out << "tree " << to_string(tree_of_recipe(r, args->d)) << "\nverdict "
            << (e.verdict == Verdict::Zero ? "pass" : e.verdict == Verdict::NonZero ? "fail" : "inconclusive")
            << "\nexact " << (e.exact ? "true" : "false") << "\nsign " << e.observed_sign << "\n";
    if (e.verdict == Verdict::NonZero) ctx.status = kViolation;
    if (e.verdict == Verdict::Inconclusive) ctx.status = kNumerical;
  });
}

void add_pfaff_commands(CLI::App& app, Context& ctx) {
  auto* pf = app.add_subcommand("pfaff", "Khovanskii bounds and solution counting");
  pf->require_subcommand(1);

  struct PfaffArgs {
    int d = 1;
    int r = 0;
    int alpha = 1;
    std::string beta;
    std::string tree;
    std::vector<std::string> functions;
    std::string config;
    bool strong = false;
    std::vector<std::string> system;
    std::string targets;
    std::string box = "-1:1";
    int resolution = 32;
  };
  auto args = std::make_shared<PfaffArgs>();

  auto* bound = pf->add_subcommand("bound", "Khovanskii bound, or the multiplicity bound of a tree");
  bound->add_option("--d", args->d, "Dimension")->capture_default_str();
  bound->add_option("--r", args->r, "Chain order")->capture_default_str();
  bound->add_option("--alpha", args->alpha, "Chain degree")->capture_default_str();
  bound->add_option("--beta", args->beta, "Comma-separated degrees beta_1..beta_d");
  bound->add_option("--tree", args->tree, "Tree whose children's systems are bounded (needs --pi)");
  bound->add_option("--pi", args->functions, "Functions pi_1..pi_m (repeat the flag)");
  bound->add_option("--chains", args->config, "JSON file with a \"chains\" array declaring the Pfaffian chain");
  bound->add_flag("--strong", args->strong, "Also bound the boundary systems");
  bound->callback([args, &ctx] {
    if (args->tree.empty()) {
      if (args->beta.empty()) throw DomainError("pfaff bound needs --beta or --tree");
      const std::vector<int> betas = parse_int_list(args->beta);
      ctx.out << khovanskii_bound(args->d, args->r, args->alpha, betas) << "\n";
      return;
    }
    std::vector<PfaffianChain> chains;
    if (!args->config.empty()) {
      std::ifstream f(args->config);
      if (!f) throw DomainError("cannot read '" + args->config + "'");
      const auto j = nlohmann::json::parse(f);
      for (const auto& k : j.at("chains")) {
        ChainConfig c;
        c.name = k.value("name", "");
        c.order = k.value("order", 0);
        c.degree = k.value("degree", 1);
        for (const auto& fn : k.value("functions", nlohmann::json::array())) {
          c.functions.push_back({fn.at("term").get<std::string>(), fn.value("degree", 1)});
        }
        c.bounded_arguments = k.value("bounded_arguments", std::vector<std::string>{});
        chains.push_back(chain_from_config(c, args->d));
      }
    }
    const PfaffianChain chain = PfaffianChain::join(chains);
    std::vector<PfaffianFormat> formats;
    for (const auto& text : args->functions) formats.push_back(format_of(parse(text, args->d), chain, args->d));
    const DTree g = parse_tree(args->tree);
    ctx.out << multiplicity_bound(g, formats, args->strong ? Multiplicity::Strong : Multiplicity::Weak) << "\n";
  });

  auto* count = pf->add_subcommand("count", "Nondegenerate solutions of system = targets in a box");
  count->add_option("--system", args->system, "Equations, separated by ';' or given by repeating the flag")->required();
  count->add_option("--targets", args->targets, "Comma-separated right-hand sides (default: zeros)");
  count->add_option("--box", args->box, "lo:hi or lo:hi,lo:hi,... (use --box=-1:1)")->capture_default_str();
  count->add_option("--resolution", args->resolution, "Grid cells per axis")->capture_default_str();
  count->callback([args, &ctx] {
    std::vector<std::string> texts;
    for (const auto& group : args->system) {
      std::stringstream ss(group);
      for (std::string part; std::getline(ss, part, ';');) texts.push_back(part);
    }
    const int d = static_cast<int>(texts.size());
    std::vector<Expr> system;
    for (const auto& t : texts) system.push_back(parse(t, d));
    std::vector<double> targets = args->targets.empty() ? std::vector<double>(texts.size(), 0.0) : parse_list(args->targets);
    const Box box = box_of(parse_box(args->box, d));
    CountOptions options;
    options.resolution = args->resolution;
    const SolutionCount c = count_nondegenerate(system, targets, box.axes, options);
    std::vector<int> degrees;
    bool polynomial = true;
    for (const auto& e : system) {
      try {
        degrees.push_back(format_of(e, PfaffianChain::none(), d).beta);
      } catch (const DomainError&) {
        polynomial = false;
      }
    }
    ctx.out << "count " << c.count << "\ncertified " << (c.certified ? "true" : "false") << "\n";
    if (polynomial) {
      const Integer bound = khovanskii_bound(d, 0, 1, degrees);
      ctx.out << "bezout " << bound << "\n";
      if (Integer(c.count) > bound) ctx.status = kViolation;
    }
    for (const auto& r : c.roots) {
      ctx.out << "root";
      for (double x : r) ctx.out << " " << format_double(x);
      ctx.out << "\n";
    }
  });
}

struct RegionArgs {
  int d = 1;
  std::string f;
  std::string box = "0:1";
  double eps = -1.0;
  std::vector<std::string> constraints;
};

void add_region_options(CLI::App* c, RegionArgs& a) {
  c->add_option("--d", a.d, "Dimension")->capture_default_str();
  c->add_option("--f", a.f, "Function F; pi = (x1, ..., xd, F)")->required();
  c->add_option("--box", a.box, "Domain: lo:hi or lo:hi,lo:hi,... (use --box=-1:1)")->capture_default_str();
  c->add_option("--constraint", a.constraints, "Constraint j:lo:hi on pi_j (repeatable)");
}

ConstraintSet region_of(const RegionArgs& a) {
  ConstraintSet c;
  c.domain = box_of(parse_box(a.box, a.d));
  if (a.eps >= 0.0) c.constraints.push_back({a.d + 1, {-a.eps, a.eps}});
  for (const auto& text : a.constraints) {
    const ConstraintConfig k = parse_constraint(text);
    c.constraints.push_back({k.function, {k.lo, k.hi}});
  }
  return c;
}

void add_numeric_commands(CLI::App& app, Context& ctx) {
  auto region = std::make_shared<RegionArgs>();
  auto options = std::make_shared<MeasureOptions>();
  auto* measure = app.add_subcommand("measure", "Measure of {x in box : |F| <= eps and pi_j in [lo, hi]}");
  add_region_options(measure, *region);
  measure->add_option("--eps", region->eps, "Sublevel threshold on |F|");
  measure->add_option("--resolution", options->resolution, "Grid cells per axis, d <= 3 (0: 10^6, 4096, 256 for d = 1, 2, 3)")
      ->capture_default_str();
  measure->add_option("--samples", options->samples, "Monte Carlo samples, d >= 4")->capture_default_str();
  measure->add_option("--seed", options->seed, "Monte Carlo root seed")->capture_default_str();
  measure->callback([region, options, &ctx] {
    const FunctionTuple pi = FunctionTuple::euclidean(parse(region->f, region->d), region->d);
    MeasureOptions o = *options;
    o.parallel.threads = ctx.threads;
    const MeasureEstimate m = constrained_measure(pi, region_of(*region), o);
    ctx.out << "value " << format_double(m.value) << "\nhalf_width " << format_double(m.half_width) << "\nmethod "
            << to_string(m.method) << "\nsamples " << m.samples << "\nseed " << m.seed << "\n";
  });

  auto oregion = std::make_shared<RegionArgs>();
  auto oargs = std::make_shared<std::pair<double, OscillatoryOptions>>();
  auto* osc = app.add_subcommand("osc", "Oscillatory integral of exp(i lambda F) over the region");
  add_region_options(osc, *oregion);
  osc->add_option("--eps", oregion->eps, "Restrict to |F| <= eps");
  osc->add_option("--lambda", oargs->first, "Frequency")->required();
  osc->add_option("--tol", oargs->second.tol, "Target absolute error")->capture_default_str();
  osc->add_option("--max-cells", oargs->second.max_cells, "Cell budget")->capture_default_str();
  osc->callback([oregion, oargs, &ctx] {
    const FunctionTuple pi = FunctionTuple::euclidean(parse(oregion->f, oregion->d), oregion->d);
    const OscillatoryResult r = oscillatory_integral(pi, oregion->d + 1, region_of(*oregion), oargs->first, oargs->second);
    ctx.out << "re " << format_double(r.value.real()) << "\nim " << format_double(r.value.imag()) << "\nabs "
            << format_double(std::abs(r.value)) << "\nerror " << format_double(r.error) << "\nconverged "
            << (r.converged ? "true" : "false") << "\ncells " << r.cells << "\n";
    if (!r.converged) ctx.status = kNumerical;
  });
}

struct VerifyArgs {
  std::string config;
  std::string echo;
  int d = 0;
  std::string f;
  std::string tree;
  std::string recipe;
  std::string box;
  std::vector<std::string> constraints;
  std::string ladder;
  long resolution = -1;
  long inf_resolution = -1;
  long long seed = -1;
  int envelope = 0;
  std::string csv;
  std::string json;
};

void run_verify(EstimateKind kind, const VerifyArgs& a, Context& ctx) {
  ExperimentConfig c;
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw DomainError("cannot read config '" + a.config + "'");
    c = config_from_json(nlohmann::json::parse(f));
  }
  c.kind = kind;
  if (a.d > 0) c.dimension = a.d;
  if (!a.f.empty()) {
    c.functions = {a.f};
    c.euclidean = true;
  }
  if (!a.tree.empty()) c.tree = a.tree;
  if (!a.recipe.empty()) {
    c.recipe = a.recipe;
    if (a.tree.empty()) c.tree.clear();
  }
  if (!a.box.empty()) c.domain = parse_box(a.box, c.dimension);
  for (const auto& text : a.constraints) c.constraints.push_back(parse_constraint(text));
  if (!a.ladder.empty()) {
    const auto parts = parse_list(a.ladder);
    if (parts.size() != 3) throw DomainError("--ladder takes start,ratio,count");
    c.ladder = {parts[0], parts[1], static_cast<int>(parts[2]), {}};
  }
  if (a.resolution >= 0) c.resolution = a.resolution;
  if (a.inf_resolution >= 0) c.inf_resolution = a.inf_resolution;
  if (a.seed >= 0) c.seed = static_cast<std::uint64_t>(a.seed);
  if (a.envelope > 0) c.envelope = a.envelope;
  if (!a.csv.empty()) c.csv = a.csv;
  if (!a.json.empty()) c.json = a.json;
  if (ctx.threads > 1) c.threads = ctx.threads;

  c = resolve(c);
  if (!a.echo.empty()) emit(ctx.out, a.echo, config_to_json(c).dump(2) + "\n");

  const EstimateReport report = verify_estimate(estimate_spec(c));
  if (c.csv.empty()) {
    ctx.out << to_csv(report);
  } else {
    write_file(c.csv, to_csv(report));
  }
  emit(ctx.out, c.json, to_json(report));

  if (!report.converged) {
    ctx.err << "error: quadrature did not reach the tolerance\n";
    ctx.status = kNumerical;
  } else if (report.verdict == EstimateVerdict::Violation) {
    ctx.status = kViolation;
  }
}

void add_verify_commands(CLI::App& app, Context& ctx) {
  auto* verify = app.add_subcommand("verify", "Run a ladder and compare with the predicted estimate (exit 1 on violation)");
  verify->require_subcommand(1);
  auto args = std::make_shared<VerifyArgs>();
  for (const auto kind : {EstimateKind::Sublevel, EstimateKind::Multilinear, EstimateKind::Oscillatory}) {
    const std::string name(to_string(kind));
    auto* c = verify->add_subcommand(name, name + " estimate");
    c->add_option("--config", args->config, "JSON experiment config (schema sublevel-experiment/1)");
    c->add_option("--echo-config", args->echo, "Write the resolved config here ('-' for stdout)");
    c->add_option("--d", args->d, "Dimension (default 1)");
    c->add_option("--f", args->f, "Function F; pi = (x1, ..., xd, F)");
    c->add_option("--tree", args->tree, "d-tree in bracketed form");
    c->add_option("--recipe", args->recipe, "Operator recipe; its tree is used when --tree is absent");
    c->add_option("--box", args->box, "Domain, default [0,1]^d (use --box=-1:1)");
    c->add_option("--constraint", args->constraints, "Fixed set j:lo:hi (repeatable)");
    c->add_option("--ladder", args->ladder,
                  "start,ratio,count (default 0.0625,0.5,9 for eps; 16,2,11 for lambda)");
    c->add_option("--resolution", args->resolution, "Measure grid per axis (default 10^6, 4096, 256 for d = 1, 2, 3)");
    c->add_option("--inf-resolution", args->inf_resolution, "Infimum grid per axis (default 4096, 256, 64)");
    c->add_option("--seed", args->seed, "Root seed (default 1)");
    c->add_option("--envelope", args->envelope, "Oscillatory: lambda samples per octave in the envelope (default 8)");
    c->add_option("--csv", args->csv, "CSV output path (default: stdout)");
    c->add_option("--json", args->json, "JSON summary path (default: stdout)");
    c->callback([kind, args, &ctx] { run_verify(kind, *args, ctx); });
  }
}

void add_demo_commands(CLI::App& app, Context& ctx) {
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);

  struct DemoArgs {
    std::string ns = "1,10,100";
    double eps = 0.1;
    long resolution = 0;
    long inf_resolution = 0;
    std::string ks = "3,4,5";
    std::string coefficients = "1,2";
    int max_beta = 4;
    std::string csv;
  };
  auto args = std::make_shared<DemoArgs>();

  auto* hc = demo->add_subcommand("hessian-counterexample",
                                  "F_N = exp(x1) sin(N x2) / N on [0,1]^2: inf |det Hess| vs sublevel measure");
  hc->add_option("--N", args->ns, "Comma-separated frequencies")->capture_default_str();
  hc->add_option("--eps", args->eps, "Sublevel threshold")->capture_default_str();
  hc->add_option("--resolution", args->resolution, "Measure grid per axis (0: 4096)")->capture_default_str();
  hc->add_option("--inf-resolution", args->inf_resolution, "Infimum grid per axis (0: 256)")->capture_default_str();
  hc->add_option("--csv", args->csv, "Output path (default: stdout)");
  hc->callback([args, &ctx] {
    std::string csv = "N,inf_naive,inf_certified,measure,half_width\n";
    const Box box = Box::cube(2, 0.0, 1.0);
    for (int n : parse_int_list(args->ns)) {
      if (n < 1) throw DomainError("N must be positive");
      const std::string text = "(1/" + std::to_string(n) + ")*exp(x1)*sin(" + std::to_string(n) + "*x2)";
      const FunctionTuple pi = FunctionTuple::euclidean(parse(text, 2), 2);
      const InfimumEstimate inf = inf_abs(apply_tree(hessian_tree(2), pi), box, args->inf_resolution, {ctx.threads});
      MeasureOptions o;
      o.resolution = args->resolution;
      o.parallel.threads = ctx.threads;
      const MeasureEstimate m = constrained_measure(pi, ConstraintSet::sublevel(box, 3, args->eps), o);
      csv += std::to_string(n) + ',' + format_double(inf.naive_min) + ',' +
             (inf.certified_lower ? format_double(*inf.certified_lower) : "none") + ',' + format_double(m.value) + ',' +
             format_double(m.half_width) + '\n';
    }
    emit(ctx.out, args->csv, csv);
  });

  auto* pl = demo->add_subcommand("p-compose-ell",
                                  "Every recipe with alpha >= 2 annihilates F = (a.x)^k (exit 1 if one does not)");
  pl->add_option("--k", args->ks, "Comma-separated powers")->capture_default_str();
  pl->add_option("--coefficients", args->coefficients, "Coefficients of the linear form (its length is d)")
      ->capture_default_str();
  pl->add_option("--max-beta", args->max_beta, "Largest |beta| enumerated")->capture_default_str();
  pl->add_option("--csv", args->csv, "Output path (default: stdout)");
  pl->callback([args, &ctx] {
    const std::vector<double> a = parse_list(args->coefficients);
    const int d = static_cast<int>(a.size());
    std::string form;
    for (int i = 0; i < d; ++i) {
      form += (i ? " + " : "") + std::string("(") + format_double(a[static_cast<std::size_t>(i)]) + ")*x" +
              std::to_string(i + 1);
    }
    std::string csv = "recipe,alpha,beta,k,verdict\n";
    for (const auto& r : enumerate_recipes(d, args->max_beta)) {
      const OperatorType t = type_of_recipe(r, d);
      if (t.alpha < 2) continue;
      for (int k : parse_int_list(args->ks)) {
        const Expr f = parse("(" + form + ")^" + std::to_string(k), d);
        const ZeroTestResult z = zero_test(apply_recipe(r, f, d));
        std::string beta = join(t.beta);
        csv += "\"" + to_string(r) + "\"," + std::to_string(t.alpha) + ",\"" + beta + "\"," + std::to_string(k) + ',' +
               std::string(to_string(z.verdict)) + '\n';
        if (z.verdict != Verdict::Zero) ctx.status = kViolation;
      }
    }
    emit(ctx.out, args->csv, csv);
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform sublevel-set, multilinear and oscillatory estimates for d-tree operators", "sublevel"};
  app.require_subcommand(1);
  Context ctx{out, err};
  app.add_option("--threads", ctx.threads, "Worker threads for grids, shards and ladder points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  add_tree_commands(app, ctx);
  add_op_commands(app, ctx);
  add_pfaff_commands(app, ctx);
  add_numeric_commands(app, ctx);
  add_verify_commands(app, ctx);
  add_demo_commands(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return ctx.status;
}

}  // namespace sublevel::cli
