#pragma once

#include <complex>
#include <vector>

#include "drce/config.hpp"
#include "drce/matrix.hpp"

namespace drce {

/**
 * Real Schur-style eigen decomposition of a general square matrix.
 *
 * `real[i] ± i·imag[i]` are the eigenvalues. Complex pairs occupy consecutive
 * slots with imag[i] > 0 and imag[i+1] = -imag[i]. When vectors are requested,
 * `vectors` satisfies M·V = V·D where D is block diagonal with [a, b; -b, a]
 * blocks for complex pairs.
 */
struct EigenDecomposition {
  Vector real;
  Vector imag;
  Matrix vectors;  // empty when not requested
};

EigenDecomposition eigen_decompose(const Matrix& m, bool want_vectors,
                                   const Tolerances& tol = default_tolerances());

std::vector<std::complex<double>> eigenvalues(const Matrix& m,
                                              const Tolerances& tol = default_tolerances());

/// Largest eigenvalue magnitude.
double spectral_radius(const Matrix& m, const Tolerances& tol = default_tolerances());

/// 2×2 rotation-scaling block r·[cos θ, −sin θ; sin θ, cos θ], θ in degrees.
struct RotationBlock {
  double r = 0.0;
  double theta_deg = 0.0;
};

/**
 * M = P·J·P⁻¹ with J = diag(r₁R(θ₁), …, r_qR(θ_q), λ₁, …, λ_p).
 *
 * Complex blocks come first ordered by increasing r, then real eigenvalues by
 * increasing |λ|. Every θ lies in (0°, 180°). `perturbation` is the largest
 * relative change applied to separate coincident eigenvalues or magnitudes
 * (zero when none was needed); `matrix_perturbation` is the relative size of
 * any diagonal shift applied to M itself to escape a defective eigenbasis.
 */
struct RealJordanForm {
  Matrix p;
  Matrix p_inverse;
  std::vector<RotationBlock> complex_blocks;
  Vector real_eigs;
  double perturbation = 0.0;
  double matrix_perturbation = 0.0;

  [[nodiscard]] std::size_t dim() const { return p.rows(); }
  [[nodiscard]] Matrix j() const;
  /// Jᵏ assembled blockwise from rᵏ and k·θ.
  [[nodiscard]] Matrix j_power(unsigned long long k) const;
  [[nodiscard]] Matrix reconstruct() const;
};

RealJordanForm real_jordan(const Matrix& m, const Tolerances& tol = default_tolerances());

}  // namespace drce
