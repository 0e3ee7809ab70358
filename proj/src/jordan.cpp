#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "drce/errors.hpp"
#include "drce/jordan.hpp"

namespace drce {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

struct Eigenpair {
  bool complex = false;
  double re = 0.0;
  double im = 0.0;  // > 0 for the representative of a complex pair
  std::size_t col = 0;

  [[nodiscard]] double magnitude() const { return complex ? std::hypot(re, im) : std::abs(re); }
};

void column_norm(const Matrix& v, std::size_t c, double& acc) {
  for (std::size_t r = 0; r < v.rows(); ++r) acc += v(r, c) * v(r, c);
}

// Scales members of each group of (numerically) equal magnitudes so that all
// magnitudes become distinct. Returns the largest relative change applied.
double separate_magnitudes(std::vector<Eigenpair>& pairs, const Tolerances& tol) {
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].magnitude() < pairs[b].magnitude();
  });
  double applied = 0.0;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    const double base = pairs[order[start]].magnitude();
    while (end < order.size() &&
           pairs[order[end]].magnitude() - pairs[order[end - 1]].magnitude() < tol.eigen_tie) {
      ++end;
    }
    // Zero eigenvalues contribute nothing for t ≥ 1; their order is irrelevant.
    if (end - start > 1 && base >= tol.eigen_tie) {
      for (std::size_t k = 1; k < end - start; ++k) {
        const double factor = 1.0 - static_cast<double>(k) * tol.eigen_perturbation;
        auto& e = pairs[order[start + k]];
        e.re *= factor;
        e.im *= factor;
        applied = std::max(applied, static_cast<double>(k) * tol.eigen_perturbation);
      }
    }
    start = end;
  }
  return applied;
}

std::optional<RealJordanForm> try_build(const Matrix& target, const Matrix& work,
                                        const Tolerances& tol) {
  const std::size_t n = work.rows();
  const auto eig = eigen_decompose(work, true, tol);

  std::vector<Eigenpair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    if (eig.imag[i] > 0.0 && i + 1 < n) {
      pairs.push_back({true, eig.real[i], eig.imag[i], i});
      ++i;
    } else {
      pairs.push_back({false, eig.real[i], 0.0, i});
    }
  }

  RealJordanForm out;
  out.perturbation = separate_magnitudes(pairs, tol);

  std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.complex != b.complex) return a.complex;
    if (a.magnitude() != b.magnitude()) return a.magnitude() < b.magnitude();
    return a.re < b.re;
  });

  out.p = Matrix(n, n);
  std::size_t col = 0;
  for (const auto& e : pairs) {
    if (e.complex) {
      double nrm = 0.0;
      column_norm(eig.vectors, e.col, nrm);
      column_norm(eig.vectors, e.col + 1, nrm);
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) return std::nullopt;
      // V·[a b; −b a] → flipping the second column gives r·R(θ) with θ ∈ (0°, 180°).
      for (std::size_t r = 0; r < n; ++r) {
        out.p(r, col) = eig.vectors(r, e.col) / nrm;
        out.p(r, col + 1) = -eig.vectors(r, e.col + 1) / nrm;
      }
      out.complex_blocks.push_back({e.magnitude(), std::atan2(e.im, e.re) * kDegPerRad});
      col += 2;
    } else {
      double nrm = 0.0;
      column_norm(eig.vectors, e.col, nrm);
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) return std::nullopt;
      for (std::size_t r = 0; r < n; ++r) out.p(r, col) = eig.vectors(r, e.col) / nrm;
      out.real_eigs.push_back(e.re);
      col += 1;
    }
  }

  LuDecomposition lu(out.p);
  if (lu.singular()) return std::nullopt;
  out.p_inverse = lu.inverse();

  const double err = max_abs_diff(out.reconstruct(), target);
  if (!(err <= tol.jordan_reconstruction * std::max(1.0, norm_inf(target)))) return std::nullopt;
  return out;
}

}  // namespace

Matrix RealJordanForm::j() const { return j_power(1); }

Matrix RealJordanForm::j_power(unsigned long long k) const {
  const std::size_t n = dim();
  Matrix jk(n, n);
  std::size_t at = 0;
  for (const auto& b : complex_blocks) {
    const double rk = std::pow(b.r, static_cast<double>(k));
    const double angle = std::fmod(static_cast<double>(k) * b.theta_deg, 360.0) / kDegPerRad;
    const double c = rk * std::cos(angle);
    const double s = rk * std::sin(angle);
    jk(at, at) = c;
    jk(at, at + 1) = -s;
    jk(at + 1, at) = s;
    jk(at + 1, at + 1) = c;
    at += 2;
  }
  for (double lambda : real_eigs) {
    jk(at, at) = std::pow(lambda, static_cast<double>(k));
    ++at;
  }
  return jk;
}

Matrix RealJordanForm::reconstruct() const { return p * j() * p_inverse; }

RealJordanForm real_jordan(const Matrix& m, const Tolerances& tol) {
  if (!m.square()) throw DimensionError("real_jordan: matrix must be square");
  if (m.rows() == 0) throw ValidationError("real_jordan: empty matrix");

  // A defective (or nearly defective) eigenbasis is escaped by a small, uneven
  // diagonal shift of M; the shift stays well inside the reconstruction tolerance.
  const double scale = std::max(1.0, norm_inf(m));
  const double steps[] = {0.0, 1.0, 2.0, 4.0};
  for (double step : steps) {
    Matrix work = m;
    const double shift = step * tol.eigen_perturbation;
    if (shift > 0.0) {
      const double n = static_cast<double>(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i)
        work(i, i) += shift * scale * static_cast<double>(i + 1) / n;
    }
    if (auto form = try_build(m, work, tol)) {
      form->matrix_perturbation = shift;
      return *std::move(form);
    }
  }
  throw NumericError(
      "real_jordan: eigenvector matrix is singular after the perturbation budget was exhausted");
}

}  // namespace drce
