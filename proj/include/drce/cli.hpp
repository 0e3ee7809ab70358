#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drce/matrix.hpp"

namespace drce::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

enum class ModelKind { markov, gas };

/// {"kind": "markov"|"gas", "n": n, "matrix": [row-major n·n], "cost": [...], "x0": [...], "cost_offset": r}
struct ModelFile {
  ModelKind kind = ModelKind::gas;
  Matrix matrix;
  std::optional<Vector> cost;
  std::optional<Vector> x0;
  double cost_offset = 0.0;  // added to every cost value (set by convert)
};

ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

/// Two-column CSV "t,probability" with an optional header; missing t in [1, max t] get probability 0.
Vector parse_nominal(const std::string& text);
Vector load_nominal(const std::string& path);

/// Exit code plus the text destined for the output file (on success) or stderr (on failure).
struct Outcome {
  int code = kExitOk;
  std::string output;
  std::string diagnostic;
};

Outcome run_convert(const std::string& model_path);
Outcome run_rce(const std::string& model_path, std::size_t horizon, const std::string& algo);
Outcome run_drce(const std::string& model_path, const std::string& nominal_path, double radius);
Outcome run_rce_inf(const std::string& model_path);
Outcome run_drce_geom(const std::string& model_path, double rho, double radius, double eps);

struct ScenarioOptions {
  std::string name;  // sir, svir or csoc
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  std::vector<double> xi;  // empty selects the scenario default
  bool summary = false;
};

Outcome run_scenario(const ScenarioOptions& opts);

struct BenchOptions {
  std::vector<std::size_t> sizes{8, 16, 32, 64};
  std::size_t horizon = 10000;
  unsigned long long power_exponent = 1000000;
  int instances = 3;
  int repetitions = 3;
  std::uint64_t seed = 1;
};

Outcome run_bench(const BenchOptions& opts);

}  // namespace drce::cli
