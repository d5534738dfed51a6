#include "config.hpp"

#include "sublevel/error.hpp"

#include <charconv>
#include <set>

namespace sublevel::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class T>
T number(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw DomainError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = text.find(sep, start);
    out.push_back(text.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, std::string_view where) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!keys.contains(k)) throw DomainError("unknown field '" + k + "' in " + std::string(where));
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(number<double>(part, "number"));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) out.push_back(number<int>(part, "integer"));
  return out;
}

std::vector<std::array<double, 2>> parse_box(const std::string& text, int d) {
  std::vector<std::array<double, 2>> out;
  for (const auto& axis : split(text, ',')) {
    const auto ends = split(axis, ':');
    if (ends.size() != 2) throw DomainError("box axis must be 'lo:hi', got '" + axis + "'");
    out.push_back({number<double>(ends[0], "box endpoint"), number<double>(ends[1], "box endpoint")});
  }
  if (out.size() == 1 && d > 1) out.assign(static_cast<std::size_t>(d), out[0]);
  if (static_cast<int>(out.size()) != d) throw DomainError("box has " + std::to_string(out.size()) + " axes, expected d");
  return out;
}

ConstraintConfig parse_constraint(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("constraint must be 'j:lo:hi', got '" + text + "'");
  return {number<int>(parts[0], "function index"), number<double>(parts[1], "bound"), number<double>(parts[2], "bound")};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  check_keys(j,
             {"schema", "kind", "dimension", "functions", "euclidean", "tree", "recipe", "domain", "constraints",
              "ladder_function", "ladder", "resolution", "inf_resolution", "seed", "samples", "envelope", "tol",
              "threads", "chains", "outputs"},
             "config");
  ExperimentConfig c;
  read(j, "schema", c.schema);
  if (c.schema != kSchema) throw DomainError("unsupported config schema '" + c.schema + "', expected " + kSchema);
  if (j.contains("kind")) c.kind = parse_estimate_kind(j.at("kind").get<std::string>());
  read(j, "dimension", c.dimension);
  read(j, "functions", c.functions);
  read(j, "euclidean", c.euclidean);
  read(j, "tree", c.tree);
  read(j, "recipe", c.recipe);
  read(j, "domain", c.domain);
  if (j.contains("constraints")) {
    for (const auto& k : j.at("constraints")) {
      check_keys(k, {"function", "range"}, "constraint");
      const auto range = k.at("range").get<std::array<double, 2>>();
      c.constraints.push_back({k.at("function").get<int>(), range[0], range[1]});
    }
  }
  read(j, "ladder_function", c.ladder_function);
  if (j.contains("ladder")) {
    const auto& l = j.at("ladder");
    check_keys(l, {"start", "ratio", "count", "values"}, "ladder");
    read(l, "start", c.ladder.start);
    read(l, "ratio", c.ladder.ratio);
    read(l, "count", c.ladder.count);
    read(l, "values", c.ladder.values);
  }
  read(j, "resolution", c.resolution);
  read(j, "inf_resolution", c.inf_resolution);
  read(j, "seed", c.seed);
  read(j, "samples", c.samples);
  read(j, "envelope", c.envelope);
  read(j, "tol", c.tol);
  read(j, "threads", c.threads);
  if (j.contains("chains")) {
    for (const auto& k : j.at("chains")) {
      check_keys(k, {"name", "order", "degree", "functions", "bounded_arguments"}, "chain");
      ChainConfig chain;
      read(k, "name", chain.name);
      read(k, "order", chain.order);
      read(k, "degree", chain.degree);
      read(k, "bounded_arguments", chain.bounded_arguments);
      if (k.contains("functions")) {
        for (const auto& f : k.at("functions")) {
          check_keys(f, {"term", "degree"}, "chain function");
          chain.functions.push_back({f.at("term").get<std::string>(), f.value("degree", 1)});
        }
      }
      c.chains.push_back(std::move(chain));
    }
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    check_keys(o, {"csv", "json"}, "outputs");
    read(o, "csv", c.csv);
    read(o, "json", c.json);
  }
  return c;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["schema"] = c.schema;
  j["kind"] = std::string(to_string(c.kind));
  j["dimension"] = c.dimension;
  j["functions"] = c.functions;
  j["euclidean"] = c.euclidean;
  j["tree"] = c.tree;
  if (!c.recipe.empty()) j["recipe"] = c.recipe;
  j["domain"] = c.domain;
  j["constraints"] = ordered_json::array();
  for (const auto& k : c.constraints) j["constraints"].push_back({{"function", k.function}, {"range", {k.lo, k.hi}}});
  j["ladder_function"] = c.ladder_function;
  ordered_json ladder;
  if (c.ladder.values.empty()) {
    ladder["start"] = c.ladder.start;
    ladder["ratio"] = c.ladder.ratio;
    ladder["count"] = c.ladder.count;
  } else {
    ladder["values"] = c.ladder.values;
  }
  j["ladder"] = ladder;
  j["resolution"] = c.resolution;
  j["inf_resolution"] = c.inf_resolution;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["envelope"] = c.envelope;
  j["tol"] = c.tol;
  j["threads"] = c.threads;
  if (!c.chains.empty()) {
    j["chains"] = ordered_json::array();
    for (const auto& chain : c.chains) {
      ordered_json k;
      k["name"] = chain.name;
      k["order"] = chain.order;
      k["degree"] = chain.degree;
      k["functions"] = ordered_json::array();
      for (const auto& f : chain.functions) k["functions"].push_back({{"term", f.term}, {"degree", f.degree}});
      k["bounded_arguments"] = chain.bounded_arguments;
      j["chains"].push_back(k);
    }
  }
  j["outputs"] = {{"csv", c.csv}, {"json", c.json}};
  return j;
}

ExperimentConfig resolve(ExperimentConfig c) {
  if (c.dimension < 1) throw DomainError("dimension must be >= 1");
  if (c.functions.empty()) throw DomainError("config defines no functions");
  if (c.euclidean && c.functions.size() != 1) throw DomainError("a Euclidean config takes exactly one function F");
  if (c.domain.empty()) c.domain.assign(static_cast<std::size_t>(c.dimension), {0.0, 1.0});
  if (static_cast<int>(c.domain.size()) != c.dimension) throw DomainError("domain must have one interval per dimension");
  if (c.tree.empty()) {
    if (c.recipe.empty()) throw DomainError("config needs a tree or a recipe");
    c.tree = to_string(tree_of_recipe(parse_recipe(c.recipe), c.dimension));
  } else {
    c.tree = to_string(parse_tree(c.tree));
  }
  if (c.ladder.values.empty()) {
    const bool osc = c.kind == EstimateKind::Oscillatory;
    if (c.ladder.start == 0.0) c.ladder.start = osc ? 16.0 : 0.0625;
    if (c.ladder.ratio == 0.0) c.ladder.ratio = osc ? 2.0 : 0.5;
    if (c.ladder.count == 0) c.ladder.count = osc ? 11 : 9;
  }
  if (c.resolution == 0) c.resolution = default_measure_resolution(c.dimension);
  if (c.inf_resolution == 0) c.inf_resolution = default_inf_resolution(c.dimension);
  if (c.threads < 1) throw DomainError("threads must be >= 1");
  return c;
}

FunctionTuple function_tuple(const ExperimentConfig& c) {
  if (c.euclidean) return FunctionTuple::euclidean(parse(c.functions.at(0), c.dimension), c.dimension);
  FunctionTuple pi;
  pi.d = c.dimension;
  for (const auto& f : c.functions) pi.exprs.push_back(parse(f, c.dimension));
  pi.validate();
  return pi;
}

EstimateSpec estimate_spec(const ExperimentConfig& config) {
  const ExperimentConfig c = resolve(config);
  EstimateSpec s;
  s.kind = c.kind;
  s.pi = function_tuple(c);
  s.tree = parse_tree(c.tree);
  for (const auto& a : c.domain) s.constraints.domain.axes.push_back({a[0], a[1]});
  for (const auto& k : c.constraints) s.constraints.constraints.push_back({k.function, {k.lo, k.hi}});
  s.ladder_function = c.ladder_function;
  s.ladder = c.ladder.values.empty() ? geometric_ladder(c.ladder.start, c.ladder.ratio, c.ladder.count) : c.ladder.values;
  s.resolution = c.resolution;
  s.inf_resolution = c.inf_resolution;
  s.seed = c.seed;
  s.samples = c.samples;
  s.envelope = c.envelope;
  s.tol = c.tol;
  s.parallel.threads = c.threads;
  return s;
}

PfaffianChain chain_from_config(const ChainConfig& c, int d) {
  if (c.order < 0 || c.degree < 1) throw DomainError("chain '" + c.name + "' needs order >= 0 and degree >= 1");
  PfaffianChain chain;
  chain.name = c.name;
  chain.order = c.order;
  chain.degree = c.degree;
  for (const auto& f : c.functions) chain.functions.push_back({simplify(parse(f.term, d)), f.degree});
  for (const auto& u : c.bounded_arguments) chain.bounded_arguments.push_back(simplify(parse(u, d)));
  return chain;
}

ChainConfig chain_to_config(const PfaffianChain& c) {
  ChainConfig out{c.name, c.order, c.degree, {}, {}};
  for (const auto& f : c.functions) out.functions.push_back({to_string(f.term), f.degree});
  for (const auto& u : c.bounded_arguments) out.bounded_arguments.push_back(to_string(u));
  return out;
}

}  // namespace sublevel::cli
