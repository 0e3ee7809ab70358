#include "drce/cli.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "drce/bench.hpp"
#include "drce/errors.hpp"
#include "drce/finite_horizon.hpp"
#include "drce/format.hpp"
#include "drce/infinite_horizon.hpp"
#include "drce/markov.hpp"
#include "drce/scenarios.hpp"
#include "drce/wasserstein.hpp"
#include "json.hpp"

namespace drce::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vector read_vector(const json& j, const char* field, std::size_t n) {
  if (!j.is_array()) throw ValidationError(std::string("model: '") + field + "' must be an array of numbers");
  Vector out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(std::string("model: '") + field + "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  if (out.size() != n)
    throw ValidationError(std::string("model: '") + field + "' has " + std::to_string(out.size()) +
                          " entries, expected " + std::to_string(n));
  return out;
}

json to_json(const Matrix& m) {
  json arr = json::array();
  for (double v : m.data()) arr.push_back(v);
  return arr;
}

const Vector& require_cost(const ModelFile& m) {
  if (!m.cost) throw ValidationError("model: this command needs a 'cost' vector");
  return *m.cost;
}

const Vector& require_x0(const ModelFile& m) {
  if (!m.x0) throw ValidationError("model: this command needs an 'x0' vector");
  return *m.x0;
}

void check_distribution(const Vector& x, const char* what) {
  for (double v : x)
    if (!(v >= -1e-12)) throw ValidationError(std::string(what) + " has a negative entry");
  if (std::abs(sum(x) - 1.0) > 1e-9) throw ValidationError(std::string(what) + " must sum to 1");
}

// Stable system, cost and start state for the infinite-horizon commands; markov models are reduced first.
struct StableView {
  Matrix m;
  Vector c;
  Vector x;
  double offset = 0.0;
};

StableView stable_view(const ModelFile& model) {
  const Vector& cost = require_cost(model);
  const Vector& x0 = require_x0(model);
  if (model.kind == ModelKind::gas) return StableView{model.matrix, cost, x0, model.cost_offset};
  const GasSystem gas = to_gas(MarkovChain(model.matrix));
  const auto transferred = transfer_cost(gas, cost);
  return StableView{gas.m_bar, transferred.cost, project_state(gas, x0), transferred.offset + model.cost_offset};
}

template <typename F>
Outcome guarded(F&& body) {
  Outcome out;
  try {
    out.output = body();
    out.code = kExitOk;
  } catch (const ValidationError& e) {
    out = Outcome{kExitInvalid, "", std::string("validation error: ") + e.what()};
  } catch (const DimensionError& e) {
    out = Outcome{kExitInvalid, "", std::string("dimension error: ") + e.what()};
  } catch (const json::exception& e) {
    out = Outcome{kExitInvalid, "", std::string("malformed input: ") + e.what()};
  } catch (const ConvergenceError& e) {
    out = Outcome{kExitFailure, "", std::string("convergence failure: ") + e.what()};
  } catch (const NumericError& e) {
    out = Outcome{kExitFailure, "", std::string("numerical failure: ") + e.what()};
  } catch (const std::exception& e) {
    out = Outcome{kExitFailure, "", std::string("error: ") + e.what()};
  }
  return out;
}

}  // namespace

ModelFile parse_model(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw ValidationError("model: top level must be an object");
  for (const char* field : {"kind", "n", "matrix"})
    if (!j.contains(field)) throw ValidationError(std::string("model: missing field '") + field + "'");

  ModelFile out;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "markov")
    out.kind = ModelKind::markov;
  else if (kind == "gas")
    out.kind = ModelKind::gas;
  else
    throw ValidationError("model: kind must be 'markov' or 'gas', got '" + kind + "'");

  if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 1)
    throw ValidationError("model: 'n' must be a positive integer");
  const auto n = static_cast<std::size_t>(j.at("n").get<long long>());
  out.matrix = Matrix(n, n, read_vector(j.at("matrix"), "matrix", n * n));
  if (j.contains("cost")) out.cost = read_vector(j.at("cost"), "cost", n);
  if (j.contains("x0")) out.x0 = read_vector(j.at("x0"), "x0", n);
  if (j.contains("cost_offset")) out.cost_offset = j.at("cost_offset").get<double>();

  if (out.kind == ModelKind::markov) {
    validate_stochastic(out.matrix);
    if (out.x0) check_distribution(*out.x0, "model: 'x0' of a markov model");
  }
  return out;
}

ModelFile load_model(const std::string& path) { return parse_model(read_file(path)); }

Vector parse_nominal(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<long long, double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("nominal: expected 't,probability' in line '" + line + "'");
    const std::string left = line.substr(0, comma);
    const std::string right = line.substr(comma + 1);
    std::size_t used_t = 0;
    std::size_t used_p = 0;
    long long t = 0;
    double p = 0.0;
    try {
      t = std::stoll(left, &used_t);
      p = std::stod(right, &used_p);
    } catch (const std::exception&) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw ValidationError("nominal: cannot parse line '" + line + "'");
    }
    first = false;
    if (left.find_first_not_of(" \t", used_t) != std::string::npos ||
        right.find_first_not_of(" \t", used_p) != std::string::npos)
      throw ValidationError("nominal: trailing characters in line '" + line + "'");
    if (t < 1) throw ValidationError("nominal: horizons start at 1");
    rows.emplace_back(t, p);
  }
  if (rows.empty()) throw ValidationError("nominal: no rows");
  long long horizon = 0;
  for (const auto& [t, p] : rows) horizon = std::max(horizon, t);
  if (horizon > 10'000'000) throw ValidationError("nominal: horizon too large");
  Vector out(static_cast<std::size_t>(horizon), 0.0);
  for (const auto& [t, p] : rows) out[static_cast<std::size_t>(t - 1)] += p;
  return out;
}

Vector load_nominal(const std::string& path) { return parse_nominal(read_file(path)); }

Outcome run_convert(const std::string& model_path) {
  return guarded([&] {
    const ModelFile model = load_model(model_path);
    if (model.kind != ModelKind::markov) throw ValidationError("convert: input must be a markov model");
    const MarkovChain chain(model.matrix);
    const GasSystem gas = to_gas(chain);

    json out;
    out["kind"] = "gas";
    out["n"] = gas.m_bar.rows();
    out["matrix"] = to_json(gas.m_bar);
    out["a_op"] = to_json(gas.a_op);
    out["b_op"] = to_json(gas.b_op);
    out["stationary"] = gas.stationary;
    out["cost_offset"] = model.cost_offset;
    if (model.cost) {
      const auto transferred = transfer_cost(gas, *model.cost);
      out["cost"] = transferred.cost;
      out["cost_offset"] = transferred.offset + model.cost_offset;
    }
    if (model.x0) out["x0"] = project_state(gas, *model.x0);
    return out.dump(2) + "\n";
  });
}

Outcome run_rce(const std::string& model_path, std::size_t horizon, const std::string& algo) {
  return guarded([&] {
    if (algo != "naive" && algo != "sabs") throw ValidationError("rce: algo must be 'naive' or 'sabs'");
    if (horizon < 1) throw ValidationError("rce: horizon must be at least 1");
    const ModelFile model = load_model(model_path);
    const Vector& c = require_cost(model);
    const Vector& x0 = require_x0(model);
    const CostSequence seq = algo == "naive" ? cost_sequence_naive(model.matrix, x0, c, horizon)
                                             : cost_sequence_sabs(model.matrix, x0, c, horizon);
    const auto res = rce_finite(seq);
    return "horizon,t_star,value\n" + std::to_string(horizon) + "," + std::to_string(res.t_star) + "," +
           format_real(res.value + model.cost_offset) + "\n";
  });
}

Outcome run_drce(const std::string& model_path, const std::string& nominal_path, double radius) {
  return guarded([&] {
    const ModelFile model = load_model(model_path);
    const Vector& c = require_cost(model);
    const Vector& x0 = require_x0(model);
    AmbiguitySet amb;
    amb.nominal = load_nominal(nominal_path);
    amb.radius = radius;
    CostSequence seq = cost_sequence_sabs(model.matrix, x0, c, amb.nominal.size());
    for (double& v : seq.values) v += model.cost_offset;
    const auto sol = drce_finite(seq, amb);
    return "horizon,radius,value,case\n" + std::to_string(amb.nominal.size()) + "," + format_real(radius) + "," +
           format_real(sol.value) + "," + to_string(sol.case_used) + "\n";
  });
}

Outcome run_rce_inf(const std::string& model_path) {
  return guarded([&] {
    const StableView view = stable_view(load_model(model_path));
    const auto res = rce_infinite(view.m, view.c, view.x);
    std::string out = "kind,t_star,value,t0,search_limit\n";
    if (res.kind == RceInfKind::attained)
      out += "attained," + std::to_string(res.t_star) + "," + format_real(res.value + view.offset) + "," +
             std::to_string(res.t0) + "," + std::to_string(res.search_limit) + "\n";
    else
      out += "supremum-at-infinity,," + format_real(view.offset) + ",,\n";
    return out;
  });
}

Outcome run_drce_geom(const std::string& model_path, double rho, double radius, double eps) {
  return guarded([&] {
    const StableView view = stable_view(load_model(model_path));
    const auto res = geometric_drce(decompose(view.m, view.c, view.x), rho, radius, eps);
    return "rho_star,value,error_bound,interval_lo,interval_hi,n0\n" + format_real(res.rho_star) + "," +
           format_real(res.value + view.offset) + "," + format_real(res.error_bound) + "," +
           format_real(res.interval_lo) + "," + format_real(res.interval_hi) + "," + std::to_string(res.n0) + "\n";
  });
}

Outcome run_scenario(const ScenarioOptions& opts) {
  return guarded([&] {
    if (opts.samples < 1) throw ValidationError("scenario: need at least one sample");
    ScenarioModel model;
    std::vector<int> samples;
    std::vector<double> radii = opts.xi;
    int copies = 1;
    if (opts.name == "sir" || opts.name == "svir") {
      HealthParams p;
      p.model = opts.name == "sir" ? HealthModel::sir : HealthModel::svir;
      model = build_health_chain(p);
      samples = sample_horizons(p.horizon_min, p.horizon_max, p.horizon_mean, opts.samples, opts.seed);
      if (radii.empty()) radii = {1.0};
    } else if (opts.name == "csoc") {
      const CsocParams p;
      model = build_csoc_overtime(p);
      samples = sample_horizons(p.overtime_min, p.overtime_max, p.overtime_mean, opts.samples, opts.seed);
      copies = p.analysts;
      if (radii.empty()) radii = {16.0, 32.0};
    } else {
      throw ValidationError("scenario: unknown name '" + opts.name + "' (expected sir, svir or csoc)");
    }

    std::ostringstream os;
    if (!opts.summary) os << report_csv_header() << '\n';
    for (double xi : radii) {
      const auto report = compare_report(model, samples, xi, opts.seed, copies);
      if (opts.summary)
        write_report_summary(os, opts.name, report);
      else
        os << report_csv_row(opts.name, report) << '\n';
    }
    return os.str();
  });
}

Outcome run_bench(const BenchOptions& opts) {
  return guarded([&] {
    if (opts.sizes.empty()) throw ValidationError("bench: no sizes given");
    if (opts.horizon < 1) throw ValidationError("bench: horizon must be at least 1");
    if (opts.instances < 1 || opts.repetitions < 1)
      throw ValidationError("bench: instances and repetitions must be positive");
    std::mt19937_64 rng(opts.seed);
    std::ostringstream os;
    os << "size,instance,horizon,naive_seconds,sabs_seconds,max_abs_diff,power_exponent,chain_power_seconds,"
          "reduced_power_seconds\n";
    for (std::size_t n : opts.sizes) {
      if (n < 2) throw ValidationError("bench: sizes must be at least 2");
      for (int i = 0; i < opts.instances; ++i) {
        const Matrix stable = random_contraction(n, 0.95, rng);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        Vector x0(n);
        Vector c(n);
        for (auto& v : x0) v = unit(rng);
        for (auto& v : c) v = unit(rng);
        const auto cost = time_cost_sequences(stable, x0, c, opts.horizon, opts.repetitions);
        const auto power = time_powering(random_chain(n, rng), opts.power_exponent, opts.repetitions);
        os << n << ',' << i << ',' << opts.horizon << ',' << format_real(cost.naive_seconds) << ','
           << format_real(cost.sabs_seconds) << ',' << format_real(cost.max_abs_diff) << ',' << opts.power_exponent
           << ',' << format_real(power.full_seconds) << ',' << format_real(power.reduced_seconds) << '\n';
      }
    }
    return os.str();
  });
}

}  // namespace drce::cli
