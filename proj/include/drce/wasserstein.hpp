#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drce/config.hpp"
#include "drce/finite_horizon.hpp"
#include "drce/matrix.hpp"

namespace drce {

/// Transport cost between horizon indices: |i − j| or an explicit metric.
class GroundDistance {
 public:
  /// d(i, j) = |i − j|.
  static GroundDistance line();
  /// Validates zero diagonal, symmetry, positivity and the triangle inequality.
  static GroundDistance explicit_matrix(Matrix d);

  [[nodiscard]] bool is_line() const { return !matrix_.has_value(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const;
  /// Throws DimensionError if an explicit metric does not cover `support` points.
  void check_support(std::size_t support) const;

 private:
  std::optional<Matrix> matrix_;
};

struct AmbiguitySet {
  Vector nominal;  // p̂ over {1..T}
  double radius = 0.0;
  GroundDistance distance = GroundDistance::line();
};

enum class DrceCase { vertex_enumeration, lp };

const char* to_string(DrceCase c);

struct DrceSolution {
  double value = 0.0;
  Vector worst_q;
  DrceCase case_used = DrceCase::vertex_enumeration;
};

/// max μᵀx s.t. x_i − x_j ≤ d(i, j), Σx = 0. Requires Σμ = 0.
double w_norm(const Vector& mu, const GroundDistance& d, const Tolerances& tol = default_tolerances());

/// Wasserstein-1 distance between two distributions on {1..T}.
double w1_distance(const Vector& p, const Vector& q, const GroundDistance& d,
                   const Tolerances& tol = default_tolerances());

/// Σ_t |P(t) − Q(t)| over the cumulative distributions; equals W₁ on the line.
double w1_line_cdf(const Vector& p, const Vector& q);

/// The 2(T−1) extreme points ±(e_i − e_{i+1}) of the unit ball under the line distance,
/// ordered by i with the + direction first.
std::vector<Vector> unit_ball_vertices(std::size_t support);

/**
 * Worst expected cost over distributions within the radius of the nominal.
 *
 * When every shifted vertex p̂ ± ξ(e_i − e_{i+1}) stays nonnegative the
 * vertices are enumerated; otherwise the program over (q, λ) with
 * q = p̂ + ξ·Σλ_k v_k, Σλ = 1, q, λ ≥ 0 is solved. Line distance only.
 */
DrceSolution drce_finite(const CostSequence& seq, const AmbiguitySet& amb,
                         const Tolerances& tol = default_tolerances());

/// Forces the LP path regardless of vertex feasibility.
DrceSolution drce_finite_lp(const CostSequence& seq, const AmbiguitySet& amb,
                            const Tolerances& tol = default_tolerances());

struct InitialUncertaintyResult {
  double value = 0.0;
  std::size_t best_vertex = 0;  // 0-based, earliest wins ties
  DrceSolution solution;
};

/// Maximum of the finite DRCE over initial states x̂₀ + u_i, one inner problem per vertex.
InitialUncertaintyResult drce_with_initial_uncertainty(const Matrix& m, const Vector& x_hat0,
                                                       const std::vector<Vector>& offsets,
                                                       const Vector& c, const AmbiguitySet& amb,
                                                       const Tolerances& tol = default_tolerances());

}  // namespace drce
