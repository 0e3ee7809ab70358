#include "drce/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "drce/errors.hpp"
#include "drce/finite_horizon.hpp"
#include "drce/markov.hpp"

namespace drce {

namespace {

template <typename F>
double best_time(int repetitions, F&& work) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repetitions); ++r) {
    const auto start = std::chrono::steady_clock::now();
    work();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

// Keeps results observable so the timed work is not discarded.
volatile double g_sink = 0.0;

}  // namespace

Matrix random_chain(std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw ValidationError("random_chain: size must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m(i, j) = unit(rng);
      total += m(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) m(i, j) /= total;
  }
  return m;
}

Matrix random_contraction(std::size_t n, double norm, std::mt19937_64& rng) {
  if (n == 0) throw ValidationError("random_contraction: size must be positive");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = unit(rng);
  m *= norm / norm_inf(m);
  return m;
}

CostTiming time_cost_sequences(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon,
                               int repetitions) {
  CostTiming out;
  CostSequence naive;
  CostSequence sabs;
  out.naive_seconds = best_time(repetitions, [&] { naive = cost_sequence_naive(m, x0, c, horizon); });
  out.sabs_seconds = best_time(repetitions, [&] { sabs = cost_sequence_sabs(m, x0, c, horizon); });
  for (std::size_t i = 0; i < horizon; ++i)
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(naive.values[i] - sabs.values[i]));
  return out;
}

PowerTiming time_powering(const Matrix& chain, unsigned long long exponent, int repetitions) {
  const GasSystem reduced = to_gas(MarkovChain(chain));
  PowerTiming out;
  // Interleave the two measurements so slow drifts in machine load hit both.
  out.full_seconds = std::numeric_limits<double>::infinity();
  out.reduced_seconds = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repetitions); ++r) {
    out.full_seconds = std::min(out.full_seconds, best_time(1, [&] { g_sink = mat_pow(chain, exponent)(0, 0); }));
    out.reduced_seconds =
        std::min(out.reduced_seconds, best_time(1, [&] { g_sink = mat_pow(reduced.m_bar, exponent)(0, 0); }));
  }
  return out;
}

}  // namespace drce
