#pragma once

#include <optional>
#include <utility>

#include "drce/config.hpp"
#include "drce/matrix.hpp"

namespace drce {

/**
 * A validated column-stochastic chain x_{t+1} = M·x_t with its stationary
 * distribution. Entries within the clamp tolerance of zero are set to zero.
 */
class MarkovChain {
 public:
  /// Validates column sums, signs and the single unit eigenvalue, then solves for π.
  explicit MarkovChain(Matrix transition, const Tolerances& tol = default_tolerances());

  [[nodiscard]] std::size_t size() const { return transition_.rows(); }
  [[nodiscard]] const Matrix& transition() const { return transition_; }
  [[nodiscard]] const Vector& stationary() const { return stationary_; }

 private:
  Matrix transition_;
  Vector stationary_;
};

/// Reduced stable system on the n−1 dimensional difference space.
struct GasSystem {
  Matrix m_bar;     // A·M·B
  Matrix a_op;      // (n−1)×n
  Matrix b_op;      // n×(n−1)
  Vector stationary;
  std::optional<double> cost_offset;  // ⟨c,π⟩ once a cost is attached
};

struct TransferredCost {
  Vector cost;    // Bᵀc
  double offset;  // ⟨c,π⟩
};

/// A has ones on and below the diagonal; B has +1 on the diagonal and −1 just below it.
std::pair<Matrix, Matrix> build_ab(std::size_t n);

/// Checks the column-stochastic invariants without building a chain.
void validate_stochastic(const Matrix& m, const Tolerances& tol = default_tolerances());

/// Stationary distribution by shifted inverse iteration near eigenvalue 1.
Vector stationary(const Matrix& m, const Tolerances& tol = default_tolerances());

GasSystem to_gas(const MarkovChain& chain, const Tolerances& tol = default_tolerances());

/// v = A(x − π). Requires Σx = 1.
Vector project_state(const GasSystem& g, const Vector& x, const Tolerances& tol = default_tolerances());

/// x = B·v + π.
Vector recover_state(const GasSystem& g, const Vector& v);

/// ⟨c,x⟩ = ⟨Bᵀc, v⟩ + ⟨c,π⟩ for every x in the simplex.
TransferredCost transfer_cost(const GasSystem& g, const Vector& c);

}  // namespace drce
