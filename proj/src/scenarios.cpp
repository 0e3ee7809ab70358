#include "drce/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "drce/errors.hpp"
#include "drce/finite_horizon.hpp"
#include "drce/format.hpp"
#include "drce/markov.hpp"

namespace drce {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Inverse-CDF draw from cumulative weights; rounding in the tail falls back to the last positive entry.
std::size_t categorical(const Vector& cumulative, double u) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it != cumulative.end()) return static_cast<std::size_t>(it - cumulative.begin());
  std::size_t last = cumulative.size() - 1;
  while (last > 0 && cumulative[last] == cumulative[last - 1]) --last;
  return last;
}

Vector cumulative(const Vector& p) {
  Vector out(p.size());
  std::partial_sum(p.begin(), p.end(), out.begin());
  return out;
}

}  // namespace

const char* to_string(HealthModel m) { return m == HealthModel::sir ? "sir" : "svir"; }

Matrix csoc_shift_chain(const CsocParams& p) {
  if (!(p.arrival_rate > 0.0) || !(p.service_rate > 0.0) || !(p.step_seconds > 0.0))
    throw ValidationError("csoc: rates and step length must be positive");
  if (p.queue_cap < 1) throw ValidationError("csoc: queue_cap must be at least 1");
  const double steps_per_hour = 3600.0 / p.step_seconds;
  const double a = p.arrival_rate / steps_per_hour;
  const double s = p.service_rate / steps_per_hour;
  if (a > 1.0 || s > 1.0) throw ValidationError("csoc: per-step event probabilities exceed 1");

  const auto n = static_cast<std::size_t>(p.queue_cap) + 1;
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double up = k + 1 < n ? a * (1.0 - s) : 0.0;
    const double down = k > 0 ? s * (1.0 - a) : 0.0;
    if (k + 1 < n) m(k + 1, k) += up;
    if (k > 0) m(k - 1, k) += down;
    m(k, k) += 1.0 - up - down;
  }
  return m;
}

Vector csoc_cost(int queue_cap) {
  if (queue_cap < 1) throw ValidationError("csoc: queue_cap must be at least 1");
  Vector c(static_cast<std::size_t>(queue_cap) + 1, 0.0);
  if (queue_cap == 1) {
    c[1] = 1.0;
    return c;
  }
  for (int k = 1; k <= queue_cap; ++k)
    c[static_cast<std::size_t>(k)] = 0.5 + 0.5 * static_cast<double>(k - 1) / static_cast<double>(queue_cap - 1);
  return c;
}

ScenarioModel build_csoc_overtime(const CsocParams& p) {
  if (p.shift_steps < 1) throw ValidationError("csoc: shift_steps must be at least 1");
  if (p.analysts < 1) throw ValidationError("csoc: analysts must be at least 1");
  const Matrix shift = csoc_shift_chain(p);
  const std::size_t n = shift.rows();
  const double s = p.service_rate * p.step_seconds / 3600.0;

  ScenarioModel out;
  out.m = Matrix(n, n);
  out.m(0, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    out.m(k - 1, k) = s;
    out.m(k, k) = 1.0 - s;
  }
  out.x0 = unit_vector(n, 0);
  for (int t = 0; t < p.shift_steps; ++t) out.x0 = mat_vec(shift, out.x0);
  out.c = csoc_cost(p.queue_cap);
  return out;
}

Matrix health_person_chain(HealthModel m) {
  // Rows of the From/to tables; the chain uses their transpose.
  const Matrix from_to = m == HealthModel::sir
                             ? Matrix{{0.2, 0.8, 0.0}, {0.0, 0.5, 0.5}, {0.1, 0.0, 0.9}}
                             : Matrix{{0.1, 0.1, 0.8, 0.0}, {0.1, 0.9, 0.0, 0.0}, {0.0, 0.0, 0.5, 0.5}, {0.1, 0.0, 0.0, 0.9}};
  return from_to.transpose();
}

Vector health_default_init(HealthModel m) {
  return m == HealthModel::sir ? Vector{1.0, 0.0, 0.0} : Vector{0.4, 0.6, 0.0, 0.0};
}

std::size_t health_infected_index(HealthModel m) { return m == HealthModel::sir ? 1 : 2; }

ScenarioModel build_health_chain(const HealthParams& p) {
  if (p.population < 1) throw ValidationError("health: population must be at least 1");
  const Matrix person = health_person_chain(p.model);
  const Vector init = p.init.empty() ? health_default_init(p.model) : p.init;
  const std::size_t k = person.rows();
  if (init.size() != k) throw DimensionError("health: initial distribution has the wrong number of compartments");
  for (double v : init)
    if (!(v >= 0.0)) throw ValidationError("health: initial distribution has a negative entry");
  if (std::abs(sum(init) - 1.0) > 1e-9) throw ValidationError("health: initial distribution must sum to 1");

  ScenarioModel out;
  out.m = person;
  Matrix x = Matrix(k, 1, init);
  for (int i = 1; i < p.population; ++i) {
    out.m = kron(out.m, person);
    x = kron(x, Matrix(k, 1, init));
  }
  out.x0 = x.column(0);

  // Joint index in base k, one digit per person; cost counts infected digits.
  const std::size_t n = out.m.rows();
  const std::size_t infected = health_infected_index(p.model);
  out.c.assign(n, 0.0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (int person_i = 0; person_i < p.population; ++person_i) {
      if (rest % k == infected) out.c[idx] += 1.0;
      rest /= k;
    }
  }
  return out;
}

Vector horizon_weights(int lo, int hi, int mode) {
  if (lo < 1 || lo > mode || mode > hi) throw ValidationError("horizon law: need 1 ≤ min ≤ mean ≤ max");
  Vector w(static_cast<std::size_t>(hi - lo + 1));
  for (int t = lo; t <= hi; ++t) {
    const double v = t <= mode ? static_cast<double>(t - lo + 1) / (mode - lo + 1)
                               : static_cast<double>(hi - t + 1) / (hi - mode + 1);
    w[static_cast<std::size_t>(t - lo)] = v;
  }
  const double total = sum(w);
  for (double& v : w) v /= total;
  return w;
}

std::vector<int> sample_horizons(int lo, int hi, int mode, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw ValidationError("sample_horizons: need at least one sample");
  const Vector cum = cumulative(horizon_weights(lo, hi, mode));
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<int> out(k);
  for (auto& t : out) t = lo + static_cast<int>(categorical(cum, unit_draw(rng) * cum.back()));
  return out;
}

std::vector<double> rollout_costs(const ScenarioModel& model, const std::vector<int>& samples, std::uint64_t seed,
                                  int copies) {
  const std::size_t n = model.m.rows();
  std::vector<Vector> columns(n);
  for (std::size_t j = 0; j < n; ++j) columns[j] = cumulative(model.m.column(j));
  const Vector start = cumulative(model.x0);

  std::vector<double> out(samples.size(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // Counter-mode stream per sample so results do not depend on evaluation order.
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(i + 1)));
    for (int copy = 0; copy < copies; ++copy) {
      std::size_t state = categorical(start, unit_draw(rng) * start.back());
      for (int t = 0; t < samples[i]; ++t) state = categorical(columns[state], unit_draw(rng) * columns[state].back());
      out[i] += model.c[state];
    }
  }
  return out;
}

ComparisonReport compare_report(const ScenarioModel& model, const std::vector<int>& samples, double xi,
                                std::uint64_t seed, int copies) {
  if (samples.empty()) throw ValidationError("compare_report: no horizon samples");
  if (copies < 1) throw ValidationError("compare_report: copies must be at least 1");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ValidationError("compare_report: radius must be nonnegative");
  for (int t : samples)
    if (t < 1) throw ValidationError("compare_report: horizon samples must be positive");
  validate_stochastic(model.m);
  if (model.x0.size() != model.m.rows() || model.c.size() != model.m.rows())
    throw DimensionError("compare_report: state vectors do not match the chain size");

  const int horizon = *std::max_element(samples.begin(), samples.end());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  ComparisonReport r;
  r.t_hat = static_cast<int>(std::lround(mean));
  r.xi = xi;
  r.seed = seed;
  r.samples = samples.size();

  CostSequence seq = cost_sequence_sabs(model.m, model.x0, model.c, static_cast<std::size_t>(horizon));
  for (double& v : seq.values) v *= copies;
  r.empirical_cost = seq.values[static_cast<std::size_t>(r.t_hat - 1)];

  AmbiguitySet amb;
  amb.nominal.assign(static_cast<std::size_t>(horizon), 0.0);
  for (int t : samples) amb.nominal[static_cast<std::size_t>(t - 1)] += 1.0;
  for (double& v : amb.nominal) v /= static_cast<double>(samples.size());
  amb.radius = xi;
  const auto sol = drce_finite(seq, amb);
  r.drce_cost = sol.value;
  r.case_used = sol.case_used;
  r.nominal_cost = dot(amb.nominal, seq.values);

  const auto costs = rollout_costs(model, samples, seed, copies);
  std::size_t above_emp = 0;
  std::size_t above_drce = 0;
  for (double v : costs) {
    above_emp += v > r.empirical_cost ? 1 : 0;
    above_drce += v > r.drce_cost ? 1 : 0;
  }
  r.pct_exceed_empirical = 100.0 * static_cast<double>(above_emp) / static_cast<double>(costs.size());
  r.pct_exceed_drce = 100.0 * static_cast<double>(above_drce) / static_cast<double>(costs.size());
  return r;
}

std::string report_csv_header() {
  return "scenario,samples,seed,t_hat,xi,empirical_cost,pct_exceed_empirical,drce_cost,pct_exceed_drce,nominal_cost,"
         "drce_case";
}

std::string report_csv_row(const std::string& scenario, const ComparisonReport& r) {
  std::ostringstream os;
  os << scenario << ',' << r.samples << ',' << r.seed << ',' << r.t_hat << ',' << format_real(r.xi) << ','
     << format_real(r.empirical_cost) << ',' << format_real(r.pct_exceed_empirical) << ','
     << format_real(r.drce_cost) << ',' << format_real(r.pct_exceed_drce) << ',' << format_real(r.nominal_cost)
     << ',' << to_string(r.case_used);
  return os.str();
}

void write_report_summary(std::ostream& os, const std::string& scenario, const ComparisonReport& r) {
  os << "scenario " << scenario << " (samples " << r.samples << ", seed " << r.seed << ")\n"
     << "  mean horizon t_hat      " << r.t_hat << '\n'
     << "  radius xi               " << format_real(r.xi) << '\n'
     << "  empirical cost C_hat    " << format_real(r.empirical_cost) << '\n'
     << "  % rollouts above C_hat  " << format_real(r.pct_exceed_empirical) << '\n'
     << "  DRCE cost C             " << format_real(r.drce_cost) << " [" << to_string(r.case_used) << "]\n"
     << "  % rollouts above C      " << format_real(r.pct_exceed_drce) << '\n'
     << "  nominal expected cost   " << format_real(r.nominal_cost) << '\n';
}

}  // namespace drce
