#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "drce/matrix.hpp"

namespace testing_support {

using drce::Matrix;
using drce::Vector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  std::mt19937_64& engine() { return rng_; }

  Matrix matrix(std::size_t r, std::size_t c, double lo = -1.0, double hi = 1.0) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  Vector vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  // Random point in the probability simplex.
  Vector simplex(std::size_t n) {
    Vector v(n);
    double s = 0.0;
    for (auto& x : v) {
      x = -std::log(uniform(1e-12, 1.0));
      s += x;
    }
    for (auto& x : v) x /= s;
    return v;
  }

  // Column-stochastic matrix with a positive diagonal (lazy, irreducible w.h.p.).
  Matrix chain(std::size_t n, double laziness = 0.2) {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const Vector col = simplex(n);
      for (std::size_t i = 0; i < n; ++i) m(i, j) = (1.0 - laziness) * col[i];
      m(j, j) += laziness;
    }
    return m;
  }

  // Random matrix rescaled so that its induced ∞-norm equals `target` (< 1 gives GAS).
  Matrix contraction(std::size_t n, double target) {
    Matrix m = matrix(n, n);
    const double nrm = drce::norm_inf(m);
    m *= target / nrm;
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

// Random vector with zero sum.
inline Vector balanced(Gen& gen, std::size_t n) {
  Vector z = gen.vector(n);
  const double mean = drce::sum(z) / static_cast<double>(n);
  for (auto& v : z) v -= mean;
  return z;
}

// Sequential k-fold product; oracle for successive squaring.
inline Matrix repeated_product(const Matrix& m, unsigned k) {
  Matrix out = Matrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) out = out * m;
  return out;
}

// ⟨c, Mᵗx⟩ for t = 1..T by plain iteration.
inline Vector brute_costs(const Matrix& m, const Vector& x, const Vector& c, std::size_t horizon) {
  Vector out;
  Vector state = x;
  for (std::size_t t = 0; t < horizon; ++t) {
    state = drce::mat_vec(m, state);
    out.push_back(drce::dot(c, state));
  }
  return out;
}

}  // namespace testing_support
