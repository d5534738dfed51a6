#ifdef SUBLEVEL_HAVE_CLI

#include "cli.hpp"
#include "config.hpp"

#include "sublevel/error.hpp"

#include <doctest.h>

#include <sstream>

using namespace sublevel;
using namespace sublevel::cli;
using nlohmann::json;

namespace {

int run_cli(std::vector<const char*> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "sublevel");
  std::ostringstream o, e;
  const int code = run(static_cast<int>(args.size()), args.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

}  // namespace

TEST_CASE("config defaults are resolved explicitly") {
  ExperimentConfig c;
  c.dimension = 2;
  c.functions = {"x1^2 + x2^2"};
  c.recipe = "det[1,2](det[1](id),det[2](id))";
  const ExperimentConfig r = resolve(c);
  CHECK(r.tree == "((3,2),(1,3))");
  CHECK(r.domain == std::vector<std::array<double, 2>>{{0, 1}, {0, 1}});
  CHECK(r.ladder.start == 0.0625);
  CHECK(r.ladder.ratio == 0.5);
  CHECK(r.ladder.count == 9);
  CHECK(r.resolution == default_measure_resolution(2));
  CHECK(r.inf_resolution == default_inf_resolution(2));

  c.kind = EstimateKind::Oscillatory;
  const ExperimentConfig o = resolve(c);
  CHECK(o.ladder.start == 16.0);
  CHECK(o.ladder.ratio == 2.0);
}

TEST_CASE("config roundtrips through JSON") {
  ExperimentConfig c;
  c.kind = EstimateKind::Multilinear;
  c.dimension = 2;
  c.functions = {"x1*x2"};
  c.tree = "(1,(3,2))";
  c.domain = {{0, 1}, {0, 2}};
  c.constraints = {{1, 0, 1}, {2, 0, 2}};
  c.ladder.values = {0.1, 0.05, 0.025, 0.0125};
  c.seed = 17;
  c.threads = 2;
  c.chains.push_back(chain_to_config(PfaffianChain::exponential(Expr::variable(1))));
  c.csv = "out.csv";
  const ExperimentConfig r = resolve(c);
  const auto text = config_to_json(r).dump(2);
  const ExperimentConfig back = resolve(config_from_json(json::parse(text)));
  CHECK(config_to_json(back).dump(2) == text);
  CHECK(back.ladder.values == c.ladder.values);
  CHECK(back.chains.size() == 1);
  CHECK(back.csv == "out.csv");

  const EstimateSpec s = estimate_spec(back);
  CHECK(s.kind == EstimateKind::Multilinear);
  CHECK(s.pi.m() == 3);
  CHECK(s.constraints.domain.axes[1].hi == 2.0);
  CHECK(s.seed == 17);
}

TEST_CASE("config rejects unknown fields and bad values") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"dimension": 2, "bogus": 1})")), DomainError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"schema": "other"})")), DomainError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"ladder": {"begin": 1}})")), DomainError);
  ExperimentConfig c;
  c.dimension = 2;
  c.functions = {"x1"};
  CHECK_THROWS_AS(resolve(c), DomainError);
  c.tree = "(1,3)";
  c.domain = {{0, 1}};
  CHECK_THROWS_AS(resolve(c), DomainError);
}

TEST_CASE("flag text helpers") {
  CHECK(parse_box("-1:1", 3).size() == 3);
  CHECK(parse_box("0:1,0:2", 2)[1][1] == 2.0);
  CHECK_THROWS_AS(parse_box("0:1,0:2", 3), DomainError);
  CHECK_THROWS_AS(parse_box("0-1", 1), DomainError);
  const auto k = parse_constraint("2:-0.5:0.5");
  CHECK(k.function == 2);
  CHECK(k.lo == -0.5);
  CHECK(parse_list("1,2.5,-3") == std::vector<double>{1, 2.5, -3});
  CHECK(parse_int_list("3,3") == std::vector<int>{3, 3});
  CHECK_THROWS_AS(parse_int_list("3,x"), DomainError);
}

TEST_CASE("cli subcommands and exit codes") {
  std::string out, err;
  CHECK(run_cli({"tree", "stats", "((3,2),(1,3))", "--d", "2", "--m", "3"}, out, err) == kPass);
  CHECK(out.find("order 3") != std::string::npos);
  CHECK(out.find("leaf_counts (1,1,2)") != std::string::npos);

  CHECK(run_cli({"pfaff", "bound", "--d", "2", "--r", "0", "--beta", "3,3"}, out, err) == kPass);
  CHECK(out == "9\n");

  CHECK(run_cli({"tree", "stats", "((3,2)"}, out, err) == kUsage);
  CHECK_FALSE(err.empty());
  CHECK(run_cli({"no-such-command"}, out, err) == kUsage);
  CHECK(run_cli({"measure", "--d", "1", "--f", "x1^-1", "--box", "-1:1", "--eps", "0.5", "--resolution", "3"}, out, err) ==
        kNumerical);
  CHECK(run_cli({"verify", "sublevel", "--d", "2", "--f", "(x1 + x2)^3", "--tree", "((3,2),(1,3))"}, out, err) == kPass);
  CHECK(out.find("\"verdict\": \"vacuous\"") != std::string::npos);
}

#endif
