#pragma once

namespace drce {

// Numerical tolerances shared across modules. Defaults are the documented
// contract values; callers may pass a modified copy where an overload exists.
struct Tolerances {
  // matrix_core
  double eigen_tie = 1e-9;            // eigenvalues closer than this are "equal"
  double eigen_perturbation = 1e-7;   // relative shift applied to break a tie
  double jordan_reconstruction = 1e-6;
  int qr_sweeps_per_dim = 100;

  // lp_solver
  double lp_feasibility = 1e-7;
  double lp_pivot = 1e-11;

  // markov_gas
  double stochastic_sum = 1e-9;
  double negative_clamp = 1e-12;
  double stationary_residual = 1e-10;
  double unit_eigen_gap = 1e-9;

  // wasserstein
  double balance = 1e-9;
  double vertex_negativity = 1e-12;

  // infinite_horizon
  double magnitude_tie = 1e-12;
  double negligible_amplitude = 1e-14;
  double theta_rational = 1e-9;       // |theta - a/b| accepted as exact, degrees
  long long theta_denominator_cap = 1000000;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace drce
