#pragma once

#include <cstddef>

#include "drce/matrix.hpp"

namespace drce {

/// values[t−1] = ⟨c, Mᵗx₀⟩ for t = 1..horizon.
struct CostSequence {
  std::size_t horizon = 0;
  Vector values;
};

/// Sequential matrix-vector products, O(n²T).
CostSequence cost_sequence_naive(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon);

/**
 * Small and big strides. With B = ⌊√T⌋, precomputes M^{kB}x₀ for k ≤ B and
 * (Mᵀ)ʲc for j < B, pairs them for t ≤ B², and finishes t ∈ (B², T]
 * sequentially. Horizons below 4 use the naive loop.
 */
CostSequence cost_sequence_sabs(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon);

struct RceFiniteResult {
  std::size_t t_star = 0;  // 1-based
  double value = 0.0;
};

/// Worst stopping time over the support; the earliest index wins ties.
RceFiniteResult rce_finite(const CostSequence& seq);

}  // namespace drce
