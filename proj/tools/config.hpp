#pragma once

#include "sublevel/numerics.hpp"
#include "sublevel/pfaffian.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sublevel::cli {

inline constexpr const char* kSchema = "sublevel-experiment/1";

struct LadderConfig {
  double start = 0.0;  // 0 means the default for the kind
  double ratio = 0.0;
  int count = 0;
  std::vector<double> values;  // explicit ladder; overrides start/ratio/count
};

struct ConstraintConfig {
  int function = 1;
  double lo = 0.0;
  double hi = 0.0;
};

struct ChainFunctionConfig {
  std::string term;
  int degree = 1;
};

struct ChainConfig {
  std::string name;
  int order = 0;
  int degree = 1;
  std::vector<ChainFunctionConfig> functions;
  std::vector<std::string> bounded_arguments;
};

/// One verification run. Missing fields take the defaults filled in by `resolve`.
struct ExperimentConfig {
  std::string schema = kSchema;
  EstimateKind kind = EstimateKind::Sublevel;
  int dimension = 1;
  /// With `euclidean`, the single function F and pi = (x_1, ..., x_d, F);
  /// otherwise the whole tuple pi_1..pi_m.
  std::vector<std::string> functions;
  bool euclidean = true;
  std::string tree;
  std::string recipe;
  std::vector<std::array<double, 2>> domain;
  std::vector<ConstraintConfig> constraints;
  int ladder_function = 0;
  LadderConfig ladder;
  long resolution = 0;
  long inf_resolution = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  int envelope = 8;
  double tol = 1e-9;
  int threads = 1;
  std::vector<ChainConfig> chains;
  std::string csv;
  std::string json;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& c);

/// Fills every defaulted field (domain, tree from recipe, ladder, resolutions)
/// so that the echoed config reproduces the run exactly.
ExperimentConfig resolve(ExperimentConfig c);

FunctionTuple function_tuple(const ExperimentConfig& c);
EstimateSpec estimate_spec(const ExperimentConfig& c);

PfaffianChain chain_from_config(const ChainConfig& c, int d);
ChainConfig chain_to_config(const PfaffianChain& c);

/// "lo:hi" for a cube, or "lo:hi,lo:hi,..." per axis.
std::vector<std::array<double, 2>> parse_box(const std::string& text, int d);
/// "j:lo:hi".
ConstraintConfig parse_constraint(const std::string& text);
std::vector<double> parse_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace sublevel::cli
