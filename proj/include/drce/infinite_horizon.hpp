#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "drce/config.hpp"
#include "drce/matrix.hpp"

namespace drce {

/// amplitude · rᵗ · cos(t·θ + η), angles in degrees.
struct ComplexTerm {
  double amplitude = 0.0;
  double r = 0.0;
  double theta_deg = 0.0;
  double eta_deg = 0.0;
};

/// weight · λᵗ.
struct RealTerm {
  double weight = 0.0;
  double lambda = 0.0;
};

/**
 * Closed form of t ↦ ⟨c, Mᵗx⟩ for a stable M:
 * g(t) = Σ dᵢ rᵢᵗ cos(tθᵢ + ηᵢ) + Σ wⱼ λⱼᵗ.
 *
 * Terms are ordered by increasing magnitude within each list.
 * `theta_adjustment` is the largest change made when snapping a rotation
 * angle to a nearby rational number of degrees (zero when none was needed).
 */
struct OscillatorySum {
  std::vector<ComplexTerm> complex_terms;
  std::vector<RealTerm> real_terms;
  double theta_adjustment = 0.0;
  double jordan_perturbation = 0.0;

  [[nodiscard]] bool empty() const { return complex_terms.empty() && real_terms.empty(); }
  /// Σ|dᵢ| + Σ|wⱼ|.
  [[nodiscard]] double total_amplitude() const;
  /// Largest magnitude among all terms (ζ).
  [[nodiscard]] double dominant_magnitude() const;
};

enum class CutoffCase { real_pos_pos, real_pos_neg, real_neg_neg, real_neg_pos, complex, degenerate };

const char* to_string(CutoffCase c);

struct CutoffResult {
  std::optional<std::int64_t> t0;
  std::optional<std::int64_t> n0;  // set only when the search range is already known
  CutoffCase case_tag = CutoffCase::degenerate;
};

enum class RceInfKind { attained, supremum_at_infinity };

struct RceInfResult {
  RceInfKind kind = RceInfKind::supremum_at_infinity;
  std::int64_t t_star = 0;
  double value = 0.0;
  std::int64_t t0 = 0;            // first certified positive index (0 when none)
  std::int64_t search_limit = 0;  // last index scanned
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct BezoutResult {
  std::int64_t n = 0;
  std::int64_t l = 0;
  std::int64_t g = 0;
};

struct GeometricDrceResult {
  double rho_star = 0.0;
  double value = 0.0;
  double error_bound = 0.0;
  double interval_lo = 0.0;
  double interval_hi = 0.0;
  std::int64_t n0 = 0;
};

struct LinearInstance {
  Matrix m;
  Vector c;
  Vector x;
};

struct WalkInstance {
  Matrix m;
  Vector x;
  Vector c;
  double alpha = 0.0;
};

/// cos of an angle in degrees; exact zeros at odd multiples of 90.
double cos_deg(double degrees);

/// Smallest-denominator continued-fraction convergent within `tol` of x, if the
/// denominator stays within `den_cap`.
std::optional<Rational> rationalize(double x, std::int64_t den_cap, double tol);

OscillatorySum decompose(const Matrix& m, const Vector& c, const Vector& x,
                         const Tolerances& tol = default_tolerances());

double eval_g(const OscillatorySum& s, std::int64_t t);

CutoffResult find_t0(const OscillatorySum& s, const Tolerances& tol = default_tolerances());

/// ⌈log_ζ(g_t0 / Σ amplitudes)⌉ + 1, at least 1.
std::int64_t find_n0(const OscillatorySum& s, double g_t0);

/// a·n + 360·b·l = gcd(360, a) with n ≠ 0, by extended Euclid.
BezoutResult bezout_steps(std::int64_t a, std::int64_t b);

RceInfResult rce_infinite(const Matrix& m, const Vector& c, const Vector& x,
                          const Tolerances& tol = default_tolerances());
RceInfResult rce_infinite(const OscillatorySum& s, const Tolerances& tol = default_tolerances());

/**
 * Two-dimensional rotation case, g(t) = d·rᵗ·cos(tθ + α) with θ ∈ (0, π) in
 * radians. `kappa` and `gamma` are the modulus and argument of ln r + iθ and
 * must agree with r and θ.
 */
RceInfResult rce_infinite_2d(double d, double kappa, double r, double theta, double alpha, double gamma);

/// W₁ between geometric distributions on {1, 2, ...}: |1/ρ − 1/ρ̂|.
double geometric_w1(double rho, double rho_hat);

/// Worst expected cost over geometric horizons within W₁ radius xi of Geom(rho_hat).
GeometricDrceResult geometric_drce(const OscillatorySum& s, double rho_hat, double xi, double eps);

/// Truncated objective Σ_{t≤n0} g(t)(1−ρ)^{t−1}ρ.
double geometric_objective(const OscillatorySum& s, double rho, std::int64_t n0);

/// ½-scaled rotation whose cost stays negative for t = 1..k and turns positive at 9k.
LinearInstance adversarial_instance(int k);

/// Scaled adjacency instance: ⟨c, Mᵗx⟩ ≥ 0 exactly when no walk of length t joins the first and last node.
WalkInstance dircyc_instance(const Matrix& adjacency);

}  // namespace drce
