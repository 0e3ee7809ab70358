#pragma once

#include <vector>

#include "drce/config.hpp"
#include "drce/matrix.hpp"

namespace drce {

/// maximize objectiveᵀx  s.t.  ineq_lhs·x ≤ ineq_rhs,  eq_lhs·x = eq_rhs,
/// x_j ≥ 0 wherever nonneg[j] is set (an empty mask means all variables are free).
struct LinearProgram {
  Vector objective;
  Matrix ineq_lhs;
  Vector ineq_rhs;
  Matrix eq_lhs;
  Vector eq_rhs;
  std::vector<bool> nonneg;

  [[nodiscard]] std::size_t num_vars() const { return objective.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector point;
  double value = 0.0;
};

/**
 * Two-phase primal simplex on a dense tableau with Bland's anti-cycling rule.
 *
 * Deterministic for a fixed input. Throws DimensionError on inconsistent
 * shapes and NumericError when the final basis violates the constraints by
 * more than the feasibility tolerance (pivot breakdown).
 */
LpSolution lp_solve(const LinearProgram& lp, const Tolerances& tol = default_tolerances());

}  // namespace drce
