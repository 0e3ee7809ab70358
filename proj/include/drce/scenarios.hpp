#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "drce/matrix.hpp"
#include "drce/wasserstein.hpp"

namespace drce {

/// Alert queue of one analyst; rates are per hour, durations in steps.
struct CsocParams {
  double arrival_rate = 35.0;
  double service_rate = 34.0;
  double step_seconds = 30.0;
  int queue_cap = 100;
  int shift_steps = 960;
  int analysts = 2;
  int overtime_min = 1;
  int overtime_max = 120;
  int overtime_mean = 61;
};

enum class HealthModel { sir, svir };

const char* to_string(HealthModel m);

struct HealthParams {
  HealthModel model = HealthModel::sir;
  int population = 5;
  int horizon_min = 1;
  int horizon_max = 15;
  int horizon_mean = 8;
  Vector init;  // per-person distribution; empty selects the model default
};

/// Column-stochastic chain with its initial distribution and state cost.
struct ScenarioModel {
  Matrix m;
  Vector x0;
  Vector c;
};

/// Birth-death queue during the shift: +1 w.p. a(1−s), −1 w.p. s(1−a), clamped to [0, U].
Matrix csoc_shift_chain(const CsocParams& p);

/// Overtime queue: arrivals stop, state 0 absorbs. x0 is the end-of-shift distribution.
ScenarioModel build_csoc_overtime(const CsocParams& p);

/// c(0) = 0, c(k) = 0.5 + 0.5(k−1)/(U−1); a single-slot queue costs 1 when full.
Vector csoc_cost(int queue_cap);

/// Per-person transition matrix; column j holds the moves out of compartment j.
Matrix health_person_chain(HealthModel m);
Vector health_default_init(HealthModel m);
std::size_t health_infected_index(HealthModel m);

/// Joint chain of independent identical people, built as a Kronecker power.
ScenarioModel build_health_chain(const HealthParams& p);

/// Probability weights of the discretized triangular law on [lo, hi] with its mode at `mode`.
Vector horizon_weights(int lo, int hi, int mode);

/// k i.i.d. draws from the triangular horizon law; reproducible under `seed`.
std::vector<int> sample_horizons(int lo, int hi, int mode, std::size_t k, std::uint64_t seed);

struct ComparisonReport {
  double empirical_cost = 0.0;  // cost at the rounded mean horizon
  double drce_cost = 0.0;
  double nominal_cost = 0.0;  // Σ p̂ₜ g(t)
  double pct_exceed_empirical = 0.0;
  double pct_exceed_drce = 0.0;
  int t_hat = 0;
  double xi = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  DrceCase case_used = DrceCase::vertex_enumeration;
};

/**
 * Empirical versus distributionally robust cost for a set of horizon samples.
 * `copies` independent identical systems are summed (costs scale linearly,
 * rollouts are drawn per copy).
 */
ComparisonReport compare_report(const ScenarioModel& model, const std::vector<int>& samples, double xi,
                                std::uint64_t seed, int copies = 1);

/// One sampled trajectory per horizon sample; entry i is the summed cost at t_i.
std::vector<double> rollout_costs(const ScenarioModel& model, const std::vector<int>& samples, std::uint64_t seed,
                                  int copies = 1);

std::string report_csv_header();
std::string report_csv_row(const std::string& scenario, const ComparisonReport& r);
void write_report_summary(std::ostream& os, const std::string& scenario, const ComparisonReport& r);

}  // namespace drce
