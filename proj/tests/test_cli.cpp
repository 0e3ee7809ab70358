#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "drce/cli.hpp"
#include "drce/errors.hpp"
#include "drce/finite_horizon.hpp"
#include "drce/markov.hpp"
#include "json.hpp"

using namespace drce;
using namespace drce::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "drce_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

const char* kTwoState = R"({"kind": "markov", "n": 2, "matrix": [0.9, 0.2, 0.1, 0.8], "cost": [1, 0], "x0": [0, 1]})";

int run_binary(const std::string& args) {
  const std::string cmd = std::string(DRCE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("model parsing") {
  const auto m = parse_model(kTwoState);
  CHECK(m.kind == ModelKind::markov);
  CHECK(m.matrix(0, 1) == 0.2);
  CHECK(m.matrix(1, 0) == 0.1);
  REQUIRE(m.cost);
  CHECK(*m.cost == Vector{1, 0});

  CHECK_THROWS_AS(parse_model(R"({"kind": "markov", "n": 2, "matrix": [0.9, 0.2, 0.2, 0.8]})"), ValidationError);
  CHECK_THROWS_AS(parse_model(R"({"kind": "gas", "n": 2, "matrix": [0.9]})"), ValidationError);
  CHECK_THROWS_AS(parse_model(R"({"kind": "other", "n": 1, "matrix": [0.5]})"), ValidationError);
  CHECK_THROWS_AS(parse_model(R"({"n": 1, "matrix": [0.5]})"), ValidationError);
  CHECK_THROWS(parse_model("{not json"));
}

TEST_CASE("nominal parsing") {
  CHECK(parse_nominal("t,probability\n1,0.25\n3,0.75\n") == Vector{0.25, 0, 0.75});
  CHECK(parse_nominal("2,1\n") == Vector{0, 1});
  CHECK_THROWS_AS(parse_nominal("0,1\n"), ValidationError);
  CHECK_THROWS_AS(parse_nominal("t,p\nx,y\n"), ValidationError);
  CHECK_THROWS_AS(parse_nominal(""), ValidationError);
}

TEST_CASE("convert") {
  const auto path = write_file("two_state.json", kTwoState);
  const auto res = run_convert(path);
  REQUIRE(res.code == kExitOk);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j["kind"] == "gas");
  CHECK(j["n"] == 1);
  CHECK(j["matrix"][0].get<double>() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(j["cost_offset"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // The converted file is itself a model whose costs match the original.
  const auto gas_path = write_file("two_state_gas.json", res.output);
  CHECK(run_rce(gas_path, 5, "sabs").output == run_rce(path, 5, "sabs").output);

  const auto bad = write_file("bad_sums.json", R"({"kind": "markov", "n": 2, "matrix": [0.9, 0.2, 0.2, 0.8]})");
  const auto fail = run_convert(bad);
  CHECK(fail.code == kExitInvalid);
  CHECK(fail.output.empty());
  CHECK(fail.diagnostic.find("sum") != std::string::npos);
  CHECK(run_convert((scratch_dir() / "missing.json").string()).code == kExitInvalid);
  CHECK(run_convert(write_file("gas_in.json", R"({"kind": "gas", "n": 1, "matrix": [0.5]})")).code == kExitInvalid);
}

TEST_CASE("convert and recover reproduce a trajectory") {
  const std::string model =
      R"({"kind": "markov", "n": 3, "matrix": [0.5, 0.2, 0.3, 0.25, 0.6, 0.3, 0.25, 0.2, 0.4], "x0": [1, 0, 0]})";
  const auto res = run_convert(write_file("three_state.json", model));
  REQUIRE(res.code == kExitOk);
  const auto j = nlohmann::json::parse(res.output);
  const auto n = j["n"].get<std::size_t>();
  GasSystem gas;
  gas.m_bar = Matrix(n, n, j["matrix"].get<std::vector<double>>());
  gas.a_op = Matrix(n, n + 1, j["a_op"].get<std::vector<double>>());
  gas.b_op = Matrix(n + 1, n, j["b_op"].get<std::vector<double>>());
  gas.stationary = j["stationary"].get<std::vector<double>>();
  const Matrix chain = parse_model(model).matrix;

  Vector x{1, 0, 0};
  Vector v = j["x0"].get<std::vector<double>>();
  for (int t = 0; t < 30; ++t) {
    const Vector back = recover_state(gas, v);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) <= 1e-9);
    x = mat_vec(chain, x);
    v = mat_vec(gas.m_bar, v);
  }
}

TEST_CASE("rce command") {
  const auto path = write_file("scalar.json", R"({"kind": "gas", "n": 1, "matrix": [0.5], "cost": [1], "x0": [1]})");
  const auto naive = run_rce(path, 3, "naive");
  const auto sabs = run_rce(path, 3, "sabs");
  REQUIRE(naive.code == kExitOk);
  CHECK(naive.output == "horizon,t_star,value\n3,1,0.5\n");
  CHECK(naive.output == sabs.output);
  CHECK(run_rce(path, 3, "fast").code == kExitInvalid);
  CHECK(run_rce(path, 0, "sabs").code == kExitInvalid);
  const auto no_cost = write_file("no_cost.json", R"({"kind": "gas", "n": 1, "matrix": [0.5]})");
  CHECK(run_rce(no_cost, 3, "sabs").code == kExitInvalid);
}

TEST_CASE("drce command") {
  // Shift chain: the cost is 1 at t = 1 and 0 afterwards.
  const auto path = write_file(
      "shift.json", R"({"kind": "gas", "n": 3, "matrix": [0,0,0, 1,0,0, 0,1,0], "cost": [0,1,0], "x0": [1,0,0]})");
  const auto nominal = write_file("uniform3.csv", "t,probability\n1,0.333333333333333333\n2,0.333333333333333333\n"
                                                  "3,0.333333333333333333\n");
  const auto res = run_drce(path, nominal, 0.1);
  REQUIRE(res.code == kExitOk);
  std::istringstream in(res.output);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "horizon,radius,value,case");
  CHECK(row.rfind("3,0.1,0.433333", 0) == 0);
  CHECK(row.find("vertex-enumeration") != std::string::npos);

  const auto bad = write_file("bad_nominal.csv", "1,0.5\n2,0.2\n");
  CHECK(run_drce(path, bad, 0.1).code == kExitInvalid);
  CHECK(run_drce(path, nominal, -1.0).code == kExitInvalid);
}

TEST_CASE("infinite-horizon commands") {
  const auto diag = write_file(
      "diag.json", R"({"kind": "gas", "n": 2, "matrix": [0.9, 0, 0, -0.5], "cost": [1, 1], "x0": [1, 1]})");
  auto res = run_rce_inf(diag);
  REQUIRE(res.code == kExitOk);
  CHECK(res.output == "kind,t_star,value,t0,search_limit\nattained,2,1.06,2,8\n");

  const auto neg = write_file("neg.json", R"({"kind": "gas", "n": 1, "matrix": [0.9], "cost": [-1], "x0": [1]})");
  res = run_rce_inf(neg);
  REQUIRE(res.code == kExitOk);
  CHECK(res.output.find("supremum-at-infinity,,0,,") != std::string::npos);

  const auto unstable = write_file("unstable.json", R"({"kind": "gas", "n": 1, "matrix": [1.2], "cost": [1], "x0": [1]})");
  CHECK(run_rce_inf(unstable).code == kExitInvalid);

  // Markov models are reduced first; the result includes the stationary cost.
  const auto chain = write_file("two_state_inf.json", kTwoState);
  res = run_rce_inf(chain);
  REQUIRE(res.code == kExitOk);
  const auto direct = cost_sequence_naive(parse_model(kTwoState).matrix, Vector{0, 1}, Vector{1, 0}, 200);
  CHECK(res.output.find("supremum-at-infinity,,0.666666666667,,") != std::string::npos);
  for (double v : direct.values) CHECK(v <= 2.0 / 3.0 + 1e-12);

  const auto scalar = write_file("geom.json", R"({"kind": "gas", "n": 1, "matrix": [0.5], "cost": [1], "x0": [1]})");
  res = run_drce_geom(scalar, 0.5, 0.5, 1e-12);
  REQUIRE(res.code == kExitOk);
  std::istringstream in(res.output);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "rho_star,value,error_bound,interval_lo,interval_hi,n0");
  CHECK(row.rfind("0.666666666667,0.4,", 0) == 0);
  CHECK(run_drce_geom(scalar, 0.5, 0.5, 0.0).code == kExitInvalid);
}

TEST_CASE("scenario command") {
  ScenarioOptions opts;
  opts.name = "sir";
  opts.samples = 100;
  opts.seed = 42;
  const auto res = run_scenario(opts);
  REQUIRE(res.code == kExitOk);
  std::istringstream in(res.output);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.rfind("scenario,samples,seed,t_hat,xi,empirical_cost", 0) == 0);
  std::vector<std::string> fields;
  std::stringstream ss(row);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  REQUIRE(fields.size() > 5);
  CHECK(std::abs(std::stod(fields[5]) - 0.75) <= 0.02);
  CHECK(run_scenario(opts).output == res.output);

  opts.name = "flu";
  CHECK(run_scenario(opts).code == kExitInvalid);
  opts.name = "svir";
  opts.summary = true;
  opts.xi = {0.5, 1.0};
  const auto summary = run_scenario(opts);
  REQUIRE(summary.code == kExitOk);
  CHECK(summary.output.find("DRCE cost") != std::string::npos);
}

TEST_CASE("bench command") {
  BenchOptions opts;
  opts.sizes = {4, 8};
  opts.horizon = 64;
  opts.power_exponent = 1000;
  opts.instances = 1;
  opts.repetitions = 1;
  const auto res = run_bench(opts);
  REQUIRE(res.code == kExitOk);
  CHECK(std::count(res.output.begin(), res.output.end(), '\n') == 3);
  opts.sizes = {};
  CHECK(run_bench(opts).code == kExitInvalid);
}

TEST_CASE("executable exit codes") {
  const auto good = write_file("exe_two_state.json", kTwoState);
  const auto bad = write_file("exe_bad.json", R"({"kind": "markov", "n": 2, "matrix": [0.9, 0.2, 0.2, 0.8]})");
  const auto out = (scratch_dir() / "exe_out.json").string();
  CHECK(run_binary("convert --model " + good + " --out " + out) == 0);
  CHECK(fs::exists(out));
  CHECK(run_binary("convert --model " + bad) == 2);
  CHECK(run_binary("rce --model " + good + " --horizon 4 --algo naive") == 0);
  CHECK(run_binary("rce --model " + good) == 2);
  CHECK(run_binary("nonsense") == 2);
}
