// Nonsymmetric eigenproblem: Householder reduction to upper Hessenberg form
// followed by the Francis double-shift QR iteration and, optionally,
// back-substitution for the eigenvectors. Follows the classic EISPACK
// orthes/hqr2 pair.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "drce/errors.hpp"
#include "drce/jordan.hpp"

namespace drce {

namespace {

class HessenbergQr {
 public:
  HessenbergQr(const Matrix& m, bool want_vectors, int sweep_cap)
      : n_(static_cast<int>(m.rows())),
        want_vectors_(want_vectors),
        sweep_cap_(sweep_cap),
        h_(m),
        v_(want_vectors ? Matrix::identity(m.rows()) : Matrix()),
        d_(m.rows(), 0.0),
        e_(m.rows(), 0.0),
        ort_(m.rows(), 0.0) {
    reduce_to_hessenberg();
    iterate();
  }

  EigenDecomposition result() && {
    return EigenDecomposition{std::move(d_), std::move(e_), std::move(v_)};
  }

 private:
  void reduce_to_hessenberg() {
    const int high = n_ - 1;
    for (int m = 1; m <= high - 1; ++m) {
      double scale = 0.0;
      for (int i = m; i <= high; ++i) scale += std::abs(h_(i, m - 1));
      if (scale == 0.0) continue;
      double h = 0.0;
      for (int i = high; i >= m; --i) {
        ort_[i] = h_(i, m - 1) / scale;
        h += ort_[i] * ort_[i];
      }
      double g = std::sqrt(h);
      if (ort_[m] > 0) g = -g;
      h -= ort_[m] * g;
      ort_[m] -= g;
      for (int j = m; j < n_; ++j) {
        double f = 0.0;
        for (int i = high; i >= m; --i) f += ort_[i] * h_(i, j);
        f /= h;
        for (int i = m; i <= high; ++i) h_(i, j) -= f * ort_[i];
      }
      for (int i = 0; i <= high; ++i) {
        double f = 0.0;
        for (int j = high; j >= m; --j) f += ort_[j] * h_(i, j);
        f /= h;
        for (int j = m; j <= high; ++j) h_(i, j) -= f * ort_[j];
      }
      ort_[m] *= scale;
      h_(m, m - 1) = scale * g;
    }
    if (!want_vectors_) return;
    for (int m = high - 1; m >= 1; --m) {
      if (h_(m, m - 1) == 0.0) continue;
      for (int i = m + 1; i <= high; ++i) ort_[i] = h_(i, m - 1);
      for (int j = m; j <= high; ++j) {
        double g = 0.0;
        for (int i = m; i <= high; ++i) g += ort_[i] * v_(i, j);
        g = (g / ort_[m]) / h_(m, m - 1);
        for (int i = m; i <= high; ++i) v_(i, j) += g * ort_[i];
      }
    }
  }

  void rotate_pair(int n, double p, double q) {
    for (int j = n - 1; j < n_; ++j) {
      const double z = h_(n - 1, j);
      h_(n - 1, j) = q * z + p * h_(n, j);
      h_(n, j) = q * h_(n, j) - p * z;
    }
    for (int i = 0; i <= n; ++i) {
      const double z = h_(i, n - 1);
      h_(i, n - 1) = q * z + p * h_(i, n);
      h_(i, n) = q * h_(i, n) - p * z;
    }
    if (!want_vectors_) return;
    for (int i = 0; i < n_; ++i) {
      const double z = v_(i, n - 1);
      v_(i, n - 1) = q * z + p * v_(i, n);
      v_(i, n) = q * v_(i, n) - p * z;
    }
  }

  void iterate() {
    const int nn = n_;
    int n = nn - 1;
    const int low = 0;
    const double eps = std::numeric_limits<double>::epsilon();
    double exshift = 0.0;
    double p = 0, q = 0, r = 0, s = 0, z = 0, w = 0, x = 0, y = 0;

    for (int i = 0; i < nn; ++i)
      for (int j = std::max(i - 1, 0); j < nn; ++j) norm_ += std::abs(h_(i, j));

    int iter = 0;
    long total_sweeps = 0;
    while (n >= low) {
      int l = n;
      while (l > low) {
        s = std::abs(h_(l - 1, l - 1)) + std::abs(h_(l, l));
        if (s == 0.0) s = norm_;
        if (std::abs(h_(l, l - 1)) < eps * s) break;
        --l;
      }

      if (l == n) {
        h_(n, n) += exshift;
        d_[n] = h_(n, n);
        e_[n] = 0.0;
        --n;
        iter = 0;
      } else if (l == n - 1) {
        w = h_(n, n - 1) * h_(n - 1, n);
        p = (h_(n - 1, n - 1) - h_(n, n)) / 2.0;
        q = p * p + w;
        z = std::sqrt(std::abs(q));
        h_(n, n) += exshift;
        h_(n - 1, n - 1) += exshift;
        x = h_(n, n);
        if (q >= 0) {
          z = p >= 0 ? p + z : p - z;
          d_[n - 1] = x + z;
          d_[n] = d_[n - 1];
          if (z != 0.0) d_[n] = x - w / z;
          e_[n - 1] = 0.0;
          e_[n] = 0.0;
          x = h_(n, n - 1);
          s = std::abs(x) + std::abs(z);
          p = x / s;
          q = z / s;
          r = std::sqrt(p * p + q * q);
          rotate_pair(n, p / r, q / r);
        } else {
          d_[n - 1] = x + p;
          d_[n] = x + p;
          e_[n - 1] = z;
          e_[n] = -z;
        }
        n -= 2;
        iter = 0;
      } else {
        if (++total_sweeps > static_cast<long>(sweep_cap_) * nn) {
          throw ConvergenceError("eigensolver: QR iteration did not converge within " +
                                 std::to_string(static_cast<long>(sweep_cap_) * nn) + " sweeps");
        }
        x = h_(n, n);
        y = 0.0;
        w = 0.0;
        if (l < n) {
          y = h_(n - 1, n - 1);
          w = h_(n, n - 1) * h_(n - 1, n);
        }
        if (iter == 10) {  // exceptional shift
          exshift += x;
          for (int i = low; i <= n; ++i) h_(i, i) -= x;
          s = std::abs(h_(n, n - 1)) + std::abs(h_(n - 1, n - 2));
          x = y = 0.75 * s;
          w = -0.4375 * s * s;
        }
        if (iter == 30) {
          s = (y - x) / 2.0;
          s = s * s + w;
          if (s > 0) {
            s = std::sqrt(s);
            if (y < x) s = -s;
            s = x - w / ((y - x) / 2.0 + s);
            for (int i = low; i <= n; ++i) h_(i, i) -= s;
            exshift += s;
            x = y = w = 0.964;
          }
        }
        ++iter;

        int m = n - 2;
        while (m >= l) {
          z = h_(m, m);
          r = x - z;
          s = y - z;
          p = (r * s - w) / h_(m + 1, m) + h_(m, m + 1);
          q = h_(m + 1, m + 1) - z - r - s;
          r = h_(m + 2, m + 1);
          s = std::abs(p) + std::abs(q) + std::abs(r);
          p /= s;
          q /= s;
          r /= s;
          if (m == l) break;
          if (std::abs(h_(m, m - 1)) * (std::abs(q) + std::abs(r)) <
              eps * (std::abs(p) *
                     (std::abs(h_(m - 1, m - 1)) + std::abs(z) + std::abs(h_(m + 1, m + 1))))) {
            break;
          }
          --m;
        }
        for (int i = m + 2; i <= n; ++i) {
          h_(i, i - 2) = 0.0;
          if (i > m + 2) h_(i, i - 3) = 0.0;
        }

        for (int k = m; k <= n - 1; ++k) {
          const bool notlast = (k != n - 1);
          if (k != m) {
            p = h_(k, k - 1);
            q = h_(k + 1, k - 1);
            r = notlast ? h_(k + 2, k - 1) : 0.0;
            x = std::abs(p) + std::abs(q) + std::abs(r);
            if (x == 0.0) continue;
            p /= x;
            q /= x;
            r /= x;
          }
          s = std::sqrt(p * p + q * q + r * r);
          if (p < 0) s = -s;
          if (s == 0) continue;
          if (k != m) {
            h_(k, k - 1) = -s * x;
          } else if (l != m) {
            h_(k, k - 1) = -h_(k, k - 1);
          }
          p += s;
          x = p / s;
          y = q / s;
          z = r / s;
          q /= p;
          r /= p;
          for (int j = k; j < nn; ++j) {
            p = h_(k, j) + q * h_(k + 1, j);
            if (notlast) {
              p += r * h_(k + 2, j);
              h_(k + 2, j) -= p * z;
            }
            h_(k, j) -= p * x;
            h_(k + 1, j) -= p * y;
          }
          for (int i = 0; i <= std::min(n, k + 3); ++i) {
            p = x * h_(i, k) + y * h_(i, k + 1);
            if (notlast) {
              p += z * h_(i, k + 2);
              h_(i, k + 2) -= p * r;
            }
            h_(i, k) -= p;
            h_(i, k + 1) -= p * q;
          }
          if (want_vectors_) {
            for (int i = 0; i < nn; ++i) {
              p = x * v_(i, k) + y * v_(i, k + 1);
              if (notlast) {
                p += z * v_(i, k + 2);
                v_(i, k + 2) -= p * r;
              }
              v_(i, k) -= p;
              v_(i, k + 1) -= p * q;
            }
          }
        }
      }
    }

    if (want_vectors_) back_substitute();
  }

  void back_substitute() {
    const int nn = n_;
    const double eps = std::numeric_limits<double>::epsilon();
    if (norm_ == 0.0) return;
    double p = 0, q = 0, r = 0, s = 0, z = 0, w = 0, x = 0, y = 0, t = 0;

    for (int n = nn - 1; n >= 0; --n) {
      p = d_[n];
      q = e_[n];
      if (q == 0) {
        int l = n;
        h_(n, n) = 1.0;
        for (int i = n - 1; i >= 0; --i) {
          w = h_(i, i) - p;
          r = 0.0;
          for (int j = l; j <= n; ++j) r += h_(i, j) * h_(j, n);
          if (e_[i] < 0.0) {
            z = w;
            s = r;
            continue;
          }
          l = i;
          if (e_[i] == 0.0) {
            h_(i, n) = w != 0.0 ? -r / w : -r / (eps * norm_);
          } else {
            x = h_(i, i + 1);
            y = h_(i + 1, i);
            q = (d_[i] - p) * (d_[i] - p) + e_[i] * e_[i];
            t = (x * s - z * r) / q;
            h_(i, n) = t;
            h_(i + 1, n) = std::abs(x) > std::abs(z) ? (-r - w * t) / x : (-s - y * t) / z;
          }
          t = std::abs(h_(i, n));
          if ((eps * t) * t > 1) {
            for (int j = i; j <= n; ++j) h_(j, n) /= t;
          }
        }
      } else if (q < 0) {
        int l = n - 1;
        if (std::abs(h_(n, n - 1)) > std::abs(h_(n - 1, n))) {
          h_(n - 1, n - 1) = q / h_(n, n - 1);
          h_(n - 1, n) = -(h_(n, n) - p) / h_(n, n - 1);
        } else {
          const auto c = std::complex<double>(0.0, -h_(n - 1, n)) /
                         std::complex<double>(h_(n - 1, n - 1) - p, q);
          h_(n - 1, n - 1) = c.real();
          h_(n - 1, n) = c.imag();
        }
        h_(n, n - 1) = 0.0;
        h_(n, n) = 1.0;
        for (int i = n - 2; i >= 0; --i) {
          double ra = 0.0, sa = 0.0;
          for (int j = l; j <= n; ++j) {
            ra += h_(i, j) * h_(j, n - 1);
            sa += h_(i, j) * h_(j, n);
          }
          w = h_(i, i) - p;
          if (e_[i] < 0.0) {
            z = w;
            r = ra;
            s = sa;
            continue;
          }
          l = i;
          if (e_[i] == 0) {
            const auto c = std::complex<double>(-ra, -sa) / std::complex<double>(w, q);
            h_(i, n - 1) = c.real();
            h_(i, n) = c.imag();
          } else {
            x = h_(i, i + 1);
            y = h_(i + 1, i);
            double vr = (d_[i] - p) * (d_[i] - p) + e_[i] * e_[i] - q * q;
            const double vi = (d_[i] - p) * 2.0 * q;
            if (vr == 0.0 && vi == 0.0) {
              vr = eps * norm_ *
                   (std::abs(w) + std::abs(q) + std::abs(x) + std::abs(y) + std::abs(z));
            }
            const auto c = std::complex<double>(x * r - z * ra + q * sa, x * s - z * sa - q * ra) /
                           std::complex<double>(vr, vi);
            h_(i, n - 1) = c.real();
            h_(i, n) = c.imag();
            if (std::abs(x) > std::abs(z) + std::abs(q)) {
              h_(i + 1, n - 1) = (-ra - w * h_(i, n - 1) + q * h_(i, n)) / x;
              h_(i + 1, n) = (-sa - w * h_(i, n) - q * h_(i, n - 1)) / x;
            } else {
              const auto c2 = std::complex<double>(-r - y * h_(i, n - 1), -s - y * h_(i, n)) /
                              std::complex<double>(z, q);
              h_(i + 1, n - 1) = c2.real();
              h_(i + 1, n) = c2.imag();
            }
          }
          t = std::max(std::abs(h_(i, n - 1)), std::abs(h_(i, n)));
          if ((eps * t) * t > 1) {
            for (int j = i; j <= n; ++j) {
              h_(j, n - 1) /= t;
              h_(j, n) /= t;
            }
          }
        }
      }
    }

    for (int j = nn - 1; j >= 0; --j) {
      for (int i = 0; i < nn; ++i) {
        z = 0.0;
        for (int k = 0; k <= j; ++k) z += v_(i, k) * h_(k, j);
        v_(i, j) = z;
      }
    }
  }

  int n_;
  bool want_vectors_;
  int sweep_cap_;
  Matrix h_;
  Matrix v_;
  Vector d_;
  Vector e_;
  Vector ort_;
  double norm_ = 0.0;
};

}  // namespace

EigenDecomposition eigen_decompose(const Matrix& m, bool want_vectors, const Tolerances& tol) {
  if (!m.square()) throw DimensionError("eigen_decompose: matrix must be square");
  if (m.rows() == 0) return {};
  return HessenbergQr(m, want_vectors, tol.qr_sweeps_per_dim).result();
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m, const Tolerances& tol) {
  const auto eig = eigen_decompose(m, false, tol);
  std::vector<std::complex<double>> out(eig.real.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {eig.real[i], eig.imag[i]};
  return out;
}

double spectral_radius(const Matrix& m, const Tolerances& tol) {
  const auto eig = eigen_decompose(m, false, tol);
  double rho = 0.0;
  for (std::size_t i = 0; i < eig.real.size(); ++i)
    rho = std::max(rho, std::hypot(eig.real[i], eig.imag[i]));
  return rho;
}

}  // namespace drce
