#include "drce/markov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "drce/errors.hpp"
#include "drce/jordan.hpp"

namespace drce {

namespace {

Matrix clamp_tiny(Matrix m, const Tolerances& tol) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (auto& v : m.row(i))
      if (std::abs(v) < tol.negative_clamp) v = 0.0;
  return m;
}

void require_unique_unit_eigenvalue(const Matrix& m, const Tolerances& tol) {
  std::size_t count = 0;
  for (const auto& lambda : eigenvalues(m, tol))
    if (std::abs(lambda) >= 1.0 - tol.unit_eigen_gap) ++count;
  if (count != 1)
    throw ValidationError("markov chain: expected exactly one eigenvalue of unit magnitude, found " +
                          std::to_string(count));
}

}  // namespace

void validate_stochastic(const Matrix& m, const Tolerances& tol) {
  if (!m.square()) throw DimensionError("markov chain: transition matrix must be square");
  if (m.rows() == 0) throw ValidationError("markov chain: empty transition matrix");
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) < -tol.negative_clamp)
        throw ValidationError("markov chain: negative entry at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      s += m(i, j);
    }
    if (std::abs(s - 1.0) > tol.stochastic_sum)
      throw ValidationError("markov chain: column " + std::to_string(j) + " sums to " +
                            std::to_string(s) + ", not 1");
  }
}

MarkovChain::MarkovChain(Matrix transition, const Tolerances& tol) {
  validate_stochastic(transition, tol);
  transition_ = clamp_tiny(std::move(transition), tol);
  require_unique_unit_eigenvalue(transition_, tol);
  stationary_ = drce::stationary(transition_, tol);
}

std::pair<Matrix, Matrix> build_ab(std::size_t n) {
  if (n < 2) throw ValidationError("build_ab: need at least two states");
  Matrix a(n - 1, n);
  for (std::size_t i = 0; i < n - 1; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = 1.0;
  Matrix b(n, n - 1);
  for (std::size_t j = 0; j < n - 1; ++j) {
    b(j, j) = 1.0;
    b(j + 1, j) = -1.0;
  }
  return {std::move(a), std::move(b)};
}

Vector stationary(const Matrix& m, const Tolerances& tol) {
  validate_stochastic(m, tol);
  const std::size_t n = m.rows();
  if (n == 1) return {1.0};

  // (M − σI)⁻¹ amplifies the eigenvalue-1 direction by 1/(σ−1).
  const double shift = 1.0 + 1e-7;
  Matrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= shift;
  LuDecomposition lu(shifted, 1e-15);
  if (lu.singular()) throw NumericError("stationary: shifted system is singular");

  Vector pi(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 8; ++iter) {
    pi = lu.solve(pi);
    const double s = sum(pi);
    if (!std::isfinite(s) || s == 0.0) throw NumericError("stationary: inverse iteration broke down");
    pi = scale(pi, 1.0 / s);
  }
  for (auto& v : pi)
    if (v < 0.0) v = 0.0;
  pi = scale(pi, 1.0 / sum(pi));

  const double residual = norm_inf(sub(mat_vec(m, pi), pi));
  if (residual > tol.stationary_residual)
    throw ValidationError("stationary: no unique stationary distribution (residual " +
                          std::to_string(residual) + ")");
  return pi;
}

GasSystem to_gas(const MarkovChain& chain, const Tolerances& tol) {
  const std::size_t n = chain.size();
  auto [a, b] = build_ab(n);
  const Matrix& m = chain.transition();

  // A·M is a running row sum; (A·M)·B differences adjacent columns.
  Matrix am(n - 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n - 1; ++i) {
      acc += m(i, j);
      am(i, j) = acc;
    }
  }
  Matrix m_bar(n - 1, n - 1);
  for (std::size_t i = 0; i < n - 1; ++i)
    for (std::size_t j = 0; j < n - 1; ++j) m_bar(i, j) = am(i, j) - am(i, j + 1);

  const double rho = spectral_radius(m_bar, tol);
  if (!(rho < 1.0))
    throw ValidationError("to_gas: reduced system has spectral radius " + std::to_string(rho) +
                          " >= 1 (chain is ill-conditioned or not ergodic)");
  return GasSystem{std::move(m_bar), std::move(a), std::move(b), chain.stationary(), std::nullopt};
}

Vector project_state(const GasSystem& g, const Vector& x, const Tolerances& tol) {
  if (x.size() != g.stationary.size()) throw DimensionError("project_state: state has wrong length");
  if (std::abs(sum(x) - 1.0) > tol.stochastic_sum)
    throw ValidationError("project_state: state components must sum to 1");
  return mat_vec(g.a_op, sub(x, g.stationary));
}

Vector recover_state(const GasSystem& g, const Vector& v) {
  if (v.size() != g.m_bar.rows()) throw DimensionError("recover_state: reduced state has wrong length");
  return add(mat_vec(g.b_op, v), g.stationary);
}

TransferredCost transfer_cost(const GasSystem& g, const Vector& c) {
  if (c.size() != g.stationary.size()) throw DimensionError("transfer_cost: cost has wrong length");
  return TransferredCost{mat_t_vec(g.b_op, c), dot(c, g.stationary)};
}

}  // namespace drce
