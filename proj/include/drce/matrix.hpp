#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace drce {

using Vector = std::vector<double>;

/**
 * Dense real matrix, row-major.
 *
 * Construction validates that every entry is finite; afterwards the matrix is
 * a plain value type. All arithmetic helpers below accumulate left to right so
 * results are reproducible for a fixed input.
 */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] Vector column(std::size_t c) const;
  [[nodiscard]] const std::vector<double>& data() const { return data_; }

  [[nodiscard]] Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

// Vector helpers.
Vector mat_vec(const Matrix& m, std::span<const double> v);
Vector mat_t_vec(const Matrix& m, std::span<const double> v);  // mᵀ·v without forming mᵀ
double dot(std::span<const double> a, std::span<const double> b);
Vector add(std::span<const double> a, std::span<const double> b);
Vector sub(std::span<const double> a, std::span<const double> b);
Vector scale(std::span<const double> a, double s);
double sum(std::span<const double> a);
double norm_inf(std::span<const double> a);
double norm_1(std::span<const double> a);
Vector unit_vector(std::size_t n, std::size_t i);

// Matrix norms.
double norm_inf(const Matrix& m);  // max row sum
double norm_1(const Matrix& m);    // max column sum
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// m^k by successive squaring; k = 0 gives the identity.
Matrix mat_pow(const Matrix& m, unsigned long long k);

/// LU factorization with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& m, double pivot_tol = 1e-14);

  [[nodiscard]] bool singular() const { return singular_; }
  [[nodiscard]] Vector solve(std::span<const double> b) const;
  [[nodiscard]] Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

Matrix inverse(const Matrix& m);

}  // namespace drce
