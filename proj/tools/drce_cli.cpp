#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drce/cli.hpp"

namespace {

int emit(const drce::cli::Outcome& outcome, const std::string& out_path) {
  if (outcome.code != drce::cli::kExitOk) {
    std::cerr << outcome.diagnostic << '\n';
    return outcome.code;
  }
  if (out_path.empty()) {
    std::cout << outcome.output;
    return drce::cli::kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return drce::cli::kExitInvalid;
  }
  out << outcome.output;
  return drce::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust and distributionally robust cost estimation for linear systems and Markov chains"};
  app.require_subcommand(1);

  std::string model;
  std::string out_path;
  std::size_t horizon = 0;
  std::string algo = "sabs";
  std::string nominal;
  double radius = 0.0;
  double rho = 0.5;
  double eps = 1e-9;

  auto* convert = app.add_subcommand("convert", "Reduce a Markov chain to its stable difference system");
  convert->add_option("--model", model, "Markov model file")->required();
  convert->add_option("--out", out_path, "Output file (default stdout)");

  auto* rce = app.add_subcommand("rce", "Worst stopping time over 1..T");
  rce->add_option("--model", model, "Model file")->required();
  rce->add_option("--horizon", horizon, "Largest horizon T")->required();
  rce->add_option("--algo", algo, "naive or sabs")->check(CLI::IsMember({"naive", "sabs"}));
  rce->add_option("--out", out_path, "Output file (default stdout)");

  auto* drce = app.add_subcommand("drce", "Worst expected cost over a Wasserstein ball of horizon laws");
  drce->add_option("--model", model, "Model file")->required();
  drce->add_option("--nominal", nominal, "CSV of t,probability")->required();
  drce->add_option("--radius", radius, "Ball radius")->required();
  drce->add_option("--out", out_path, "Output file (default stdout)");

  auto* rce_inf = app.add_subcommand("rce-inf", "Worst stopping time over all positive integers");
  rce_inf->add_option("--model", model, "Model file")->required();
  rce_inf->add_option("--out", out_path, "Output file (default stdout)");

  auto* drce_geom = app.add_subcommand("drce-geom", "Worst expected cost over geometric horizon laws");
  drce_geom->add_option("--model", model, "Model file")->required();
  drce_geom->add_option("--rho", rho, "Nominal success probability")->required();
  drce_geom->add_option("--radius", radius, "Ball radius")->required();
  drce_geom->add_option("--eps", eps, "Truncation accuracy");
  drce_geom->add_option("--out", out_path, "Output file (default stdout)");

  drce::cli::ScenarioOptions scen;
  bool summary = false;
  auto* scenario = app.add_subcommand("scenario", "Empirical versus robust cost on a built-in scenario");
  scenario->add_option("name", scen.name, "sir, svir or csoc")->required();
  scenario->add_option("--samples", scen.samples, "Number of horizon samples");
  scenario->add_option("--seed", scen.seed, "Random seed");
  scenario->add_option("--xi", scen.xi, "One or more ball radii")->delimiter(',');
  scenario->add_flag("--summary", summary, "Text summary instead of CSV");
  scenario->add_option("--out", out_path, "Output file (default stdout)");

  drce::cli::BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time naive vs strided cost sequences and chain vs reduced powering");
  bench->add_option("--sizes", bench_opts.sizes, "Matrix sizes")->delimiter(',');
  bench->add_option("--horizon", bench_opts.horizon, "Cost-sequence horizon");
  bench->add_option("--power", bench_opts.power_exponent, "Exponent for the powering comparison");
  bench->add_option("--instances", bench_opts.instances, "Random instances per size");
  bench->add_option("--repetitions", bench_opts.repetitions, "Timing repetitions (best is kept)");
  bench->add_option("--seed", bench_opts.seed, "Random seed");
  bench->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : drce::cli::kExitInvalid;
  }

  using namespace drce::cli;
  if (*convert) return emit(run_convert(model), out_path);
  if (*rce) return emit(run_rce(model, horizon, algo), out_path);
  if (*drce) return emit(run_drce(model, nominal, radius), out_path);
  if (*rce_inf) return emit(run_rce_inf(model), out_path);
  if (*drce_geom) return emit(run_drce_geom(model, rho, radius, eps), out_path);
  if (*scenario) {
    scen.summary = summary;
    return emit(run_scenario(scen), out_path);
  }
  if (*bench) return emit(run_bench(bench_opts), out_path);
  return kExitInvalid;
}
