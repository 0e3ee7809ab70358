#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "drce/matrix.hpp"

namespace drce {

/// Column-stochastic matrix with i.i.d. uniform entries normalized per column.
Matrix random_chain(std::size_t n, std::mt19937_64& rng);

/// Stable matrix with induced ∞-norm equal to `norm`.
Matrix random_contraction(std::size_t n, double norm, std::mt19937_64& rng);

struct CostTiming {
  double naive_seconds = 0.0;
  double sabs_seconds = 0.0;
  double max_abs_diff = 0.0;  // between the two cost sequences
};

/// Best-of-`repetitions` wall time of both cost-sequence algorithms on one instance.
CostTiming time_cost_sequences(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon,
                               int repetitions);

struct PowerTiming {
  double full_seconds = 0.0;     // Mᵀ for the n×n chain
  double reduced_seconds = 0.0;  // m̄ᵀ for the (n−1)×(n−1) stable system
};

/// Best-of-`repetitions` wall time of raising a chain and its reduced system to `exponent`.
PowerTiming time_powering(const Matrix& chain, unsigned long long exponent, int repetitions);

}  // namespace drce
