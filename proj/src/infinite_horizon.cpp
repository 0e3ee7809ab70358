#include "drce/infinite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "drce/errors.hpp"
#include "drce/jordan.hpp"

namespace drce {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadPerDeg = kPi / 180.0;
constexpr std::int64_t kScanCap = 20'000'000;
constexpr std::int64_t kIndexCap = std::numeric_limits<std::int64_t>::max() / 4;

double log_base(double x, double base) { return std::log(x) / std::log(base); }

std::int64_t to_index(long double v) {
  if (!(v < static_cast<long double>(kIndexCap))) return kIndexCap;
  if (v < 1.0L) return 1;
  return static_cast<std::int64_t>(v);
}

std::int64_t ceil_index(double v) {
  if (std::isnan(v)) throw NumericError("cutoff: bound evaluated to NaN");
  if (v <= -static_cast<double>(kIndexCap)) return -kIndexCap;
  if (v >= static_cast<double>(kIndexCap)) return kIndexCap;
  return static_cast<std::int64_t>(std::ceil(v));
}

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

int sign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

void check_magnitudes(const OscillatorySum& s) {
  for (const auto& c : s.complex_terms)
    if (!(c.r >= 0.0 && c.r < 1.0)) throw ValidationError("oscillatory sum: complex magnitude must lie in [0,1)");
  for (const auto& w : s.real_terms)
    if (!(std::abs(w.lambda) < 1.0)) throw ValidationError("oscillatory sum: real magnitude must be below 1");
}

// Copy with zero-contribution terms removed and each list sorted by magnitude.
OscillatorySum canonical(const OscillatorySum& s, const Tolerances& tol) {
  check_magnitudes(s);
  const double floor = tol.negligible_amplitude * std::max(1.0, s.total_amplitude());
  OscillatorySum out;
  out.theta_adjustment = s.theta_adjustment;
  out.jordan_perturbation = s.jordan_perturbation;
  for (const auto& c : s.complex_terms)
    if (std::abs(c.amplitude) >= floor && c.r > 0.0) out.complex_terms.push_back(c);
  for (const auto& w : s.real_terms)
    if (std::abs(w.weight) >= floor && w.lambda != 0.0) out.real_terms.push_back(w);
  std::stable_sort(out.complex_terms.begin(), out.complex_terms.end(),
                   [](const ComplexTerm& a, const ComplexTerm& b) { return a.r < b.r; });
  std::stable_sort(out.real_terms.begin(), out.real_terms.end(),
                   [](const RealTerm& a, const RealTerm& b) { return std::abs(a.lambda) < std::abs(b.lambda); });
  return out;
}

// First t in [1, limit] with g(t) > 0; stops at the scan cap.
std::optional<std::int64_t> first_positive(const OscillatorySum& s, std::int64_t limit) {
  const std::int64_t stop = std::min(limit, kScanCap);
  for (std::int64_t t = 1; t <= stop; ++t)
    if (eval_g(s, t) > 0.0) return t;
  if (limit > kScanCap)
    throw ConvergenceError("find_t0: no positive value within the scan cap of " + std::to_string(kScanCap) +
                           " steps (bound " + std::to_string(limit) + ")");
  return std::nullopt;
}

std::int64_t decay_horizon(const OscillatorySum& s) {
  const double zeta = s.dominant_magnitude();
  const double total = s.total_amplitude();
  if (zeta <= 0.0 || total <= 0.0) return 1;
  return std::max<std::int64_t>(1, ceil_index(log_base(1e-12 / total, zeta)));
}

CutoffResult real_dominant(const OscillatorySum& s) {
  const RealTerm& top = s.real_terms.back();
  const double lam_abs = std::abs(top.lambda);
  double beta = 0.0;
  double runner_up = 0.0;
  for (const auto& c : s.complex_terms) {
    beta += std::abs(c.amplitude);
    runner_up = std::max(runner_up, c.r);
  }
  for (std::size_t j = 0; j + 1 < s.real_terms.size(); ++j) {
    beta += std::abs(s.real_terms[j].weight);
    runner_up = std::max(runner_up, std::abs(s.real_terms[j].lambda));
  }
  const double eps = runner_up / lam_abs;
  // A lone dominant term has no error to beat: the logarithm is −∞.
  const double log_term = (beta == 0.0 || eps == 0.0) ? -std::numeric_limits<double>::infinity()
                                                      : log_base(std::abs(top.weight) / beta, eps);

  CutoffResult out;
  std::int64_t t0 = 0;
  std::int64_t parity_step = 1;
  if (top.weight > 0.0 && top.lambda > 0.0) {
    out.case_tag = CutoffCase::real_pos_pos;
    t0 = 1 + std::max<std::int64_t>(ceil_index(log_term), 1);
  } else if (top.weight > 0.0) {
    out.case_tag = CutoffCase::real_pos_neg;
    t0 = 2 + 2 * std::max<std::int64_t>(ceil_index(log_term / 2.0), 1);
    parity_step = 2;
  } else if (top.lambda < 0.0) {
    out.case_tag = CutoffCase::real_neg_neg;
    t0 = 2 * std::max<std::int64_t>(ceil_index(log_term / 2.0), 1) + 1;
    parity_step = 2;
  } else {
    out.case_tag = CutoffCase::real_neg_pos;
    // g is negative beyond the log term; search below it for a positive maximum,
    // shrinking the range as soon as a positive value certifies a smaller one.
    const std::int64_t limit = std::isinf(log_term) ? 0 : static_cast<std::int64_t>(std::floor(std::max(log_term, 0.0)));
    std::int64_t best_t = 0;
    double best = 0.0;
    std::int64_t stop = limit;
    for (std::int64_t t = 1; t <= stop; ++t) {
      if (t > kScanCap) throw ConvergenceError("find_t0: search range exceeds the scan cap");
      const double v = eval_g(s, t);
      if (v > best) {
        best = v;
        best_t = t;
        stop = std::min(limit, std::max(t, find_n0(s, v)));
      }
    }
    if (best_t > 0) {
      out.t0 = best_t;
      out.n0 = std::max(best_t, stop);
    }
    return out;
  }

  if (t0 >= kIndexCap / 2) throw NumericError("find_t0: cutoff overflows the index range");
  // Rounding can leave g(t0) at or below zero when the margin is tiny; step forward.
  for (std::int64_t tries = 0; tries < 1'000'000; ++tries, t0 += parity_step) {
    if (eval_g(s, t0) > 0.0) {
      out.t0 = t0;
      return out;
    }
  }
  throw NumericError("find_t0: cost stays non-positive past the certified cutoff");
}

// One full period of the dominant rotation contains an index whose cosine has
// the amplitude's sign with value at least cos(180/period); wait out the rest.
std::int64_t period_bound(const ComplexTerm& top, std::int64_t period, double gamma, double ratio) {
  std::int64_t best_k = 1;
  double best_cos = -2.0;
  for (std::int64_t k = 1; k <= period; ++k) {
    const double v = sign(top.amplitude) * cos_deg(static_cast<double>(k) * top.theta_deg + top.eta_deg);
    if (v > best_cos) {
      best_cos = v;
      best_k = k;
    }
  }
  if (!(best_cos > 0.0)) throw NumericError("find_t0: no positive phase within one period");
  if (gamma == 0.0) return best_k;
  const double needed = log_base(std::abs(top.amplitude) * best_cos / gamma, ratio);
  if (needed < static_cast<double>(best_k)) return best_k;
  const long double j = std::floor((static_cast<long double>(needed) - best_k) / period) + 1.0L;
  return to_index(best_k + j * period);
}

CutoffResult complex_dominant(const OscillatorySum& s, const Tolerances& tol) {
  CutoffResult out;
  out.case_tag = CutoffCase::complex;
  const ComplexTerm& top = s.complex_terms.back();
  double gamma = 0.0;
  double runner_up = 0.0;
  for (std::size_t i = 0; i + 1 < s.complex_terms.size(); ++i) {
    gamma += std::abs(s.complex_terms[i].amplitude);
    runner_up = std::max(runner_up, s.complex_terms[i].r);
  }
  for (const auto& w : s.real_terms) {
    gamma += std::abs(w.weight);
    runner_up = std::max(runner_up, std::abs(w.lambda));
  }
  const double ratio = runner_up / top.r;

  const auto theta = rationalize(top.theta_deg, tol.theta_denominator_cap, tol.theta_rational);
  if (!theta) {
    // Irrational angle: scan to the point where every term is below machine precision.
    if (auto t = first_positive(s, decay_horizon(s))) out.t0 = *t;
    return out;
  }
  const std::int64_t a = theta->num;
  const std::int64_t b = theta->den;
  const auto bz = bezout_steps(a, b);
  const std::int64_t period = 360 * b / bz.g;

  if (gamma == 0.0 || ratio == 0.0) {
    if (auto t = first_positive(s, std::min<std::int64_t>(period, kIndexCap))) out.t0 = *t;
    return out;
  }

  const std::int64_t c = 135 + static_cast<std::int64_t>(std::floor(top.eta_deg)) - sign(top.amplitude) * 90;
  const std::int64_t cb = c * b;
  std::int64_t p = ((cb % bz.g) + bz.g) % bz.g;
  if (p == 0) p = bz.g;

  std::int64_t bound = 0;
  if (p < 90 * b) {
    const long double n = static_cast<long double>(bz.n);
    const long double abs_n = std::abs(n);
    const long double diff = static_cast<long double>(p - cb);  // p − cb
    const long double s0 = 1.0L + std::max(0.0L, std::ceil(sign(bz.n) * (-diff) / 360.0L));
    const long double logc = log_base(std::abs(top.amplitude) / (2.0 * gamma), ratio);
    const long double d_term = (bz.g * logc - n * diff) / (360.0L * b * abs_n) - s0;
    const long double f = std::max(1.0L, std::ceil(d_term));
    const long double k = (n * diff + abs_n * (s0 + f) * 360.0L * b) / bz.g;
    if (!(k >= 1.0L)) throw NumericError("find_t0: rotation bound is not a positive index");
    bound = to_index(k);
  } else {
    bound = period_bound(top, period, gamma, ratio);
  }
  if (auto t = first_positive(s, bound)) {
    out.t0 = *t;
    return out;
  }
  throw NumericError("find_t0: no positive value up to the certified rotation bound");
}

}  // namespace

double OscillatorySum::total_amplitude() const {
  double total = 0.0;
  for (const auto& c : complex_terms) total += std::abs(c.amplitude);
  for (const auto& w : real_terms) total += std::abs(w.weight);
  return total;
}

double OscillatorySum::dominant_magnitude() const {
  double zeta = 0.0;
  for (const auto& c : complex_terms) zeta = std::max(zeta, c.r);
  for (const auto& w : real_terms) zeta = std::max(zeta, std::abs(w.lambda));
  return zeta;
}

const char* to_string(CutoffCase c) {
  switch (c) {
    case CutoffCase::real_pos_pos:
      return "real-pos-pos";
    case CutoffCase::real_pos_neg:
      return "real-pos-neg";
    case CutoffCase::real_neg_neg:
      return "real-neg-neg";
    case CutoffCase::real_neg_pos:
      return "real-neg-pos";
    case CutoffCase::complex:
      return "complex";
    case CutoffCase::degenerate:
      return "degenerate";
  }
  return "unknown";
}

double cos_deg(double degrees) {
  const double r = normalize_deg(degrees);
  const double quadrant = std::round(r / 90.0);
  const double rad = (r - 90.0 * quadrant) * kRadPerDeg;
  switch (static_cast<int>(quadrant) % 4) {
    case 0:
      return std::cos(rad);
    case 1:
      return -std::sin(rad);
    case 2:
      return -std::cos(rad);
    default:
      return std::sin(rad);
  }
}

std::optional<Rational> rationalize(double x, std::int64_t den_cap, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  long double rem = x;
  long double h_prev = 1.0L, h_prev2 = 0.0L;
  long double k_prev = 0.0L, k_prev2 = 1.0L;
  for (int step = 0; step < 64; ++step) {
    const long double term = std::floor(rem);
    const long double h = term * h_prev + h_prev2;
    const long double k = term * k_prev + k_prev2;
    if (k > static_cast<long double>(den_cap)) return std::nullopt;
    if (std::abs(static_cast<long double>(x) - h / k) <= tol)
      return Rational{static_cast<std::int64_t>(h), static_cast<std::int64_t>(k)};
    const long double frac = rem - term;
    if (frac <= 0.0L) return std::nullopt;
    rem = 1.0L / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

OscillatorySum decompose(const Matrix& m, const Vector& c, const Vector& x, const Tolerances& tol) {
  if (!m.square()) throw DimensionError("decompose: matrix must be square");
  if (c.size() != m.rows() || x.size() != m.rows()) throw DimensionError("decompose: vector length mismatch");
  const double rho = spectral_radius(m, tol);
  if (!(rho < 1.0)) throw ValidationError("decompose: spectral radius " + std::to_string(rho) + " is not below 1");

  const RealJordanForm form = real_jordan(m, tol);
  const Vector sigma = mat_t_vec(form.p, c);
  const Vector tau = mat_vec(form.p_inverse, x);

  OscillatorySum raw;
  raw.jordan_perturbation = std::max(form.perturbation, form.matrix_perturbation);
  std::size_t at = 0;
  for (const auto& block : form.complex_blocks) {
    const double u = tau[at] * sigma[at] + tau[at + 1] * sigma[at + 1];
    const double v = tau[at + 1] * sigma[at] - tau[at] * sigma[at + 1];
    ComplexTerm term;
    term.amplitude = std::hypot(u, v);
    term.r = block.r;
    term.theta_deg = block.theta_deg;
    term.eta_deg = normalize_deg(std::atan2(v, u) / kRadPerDeg);
    if (auto q = rationalize(block.theta_deg, tol.theta_denominator_cap, tol.theta_rational)) {
      const double snapped = static_cast<double>(q->num) / static_cast<double>(q->den);
      raw.theta_adjustment = std::max(raw.theta_adjustment, std::abs(snapped - block.theta_deg));
      term.theta_deg = snapped;
    }
    raw.complex_terms.push_back(term);
    at += 2;
  }
  for (double lambda : form.real_eigs) {
    raw.real_terms.push_back({sigma[at] * tau[at], lambda});
    ++at;
  }
  return canonical(raw, tol);
}

double eval_g(const OscillatorySum& s, std::int64_t t) {
  if (t < 1) throw ValidationError("eval_g: t must be at least 1");
  const double td = static_cast<double>(t);
  double total = 0.0;
  for (const auto& c : s.complex_terms)
    total += c.amplitude * std::pow(c.r, td) * cos_deg(std::fmod(c.theta_deg * td, 360.0) + c.eta_deg);
  for (const auto& w : s.real_terms) total += w.weight * std::pow(w.lambda, td);
  return total;
}

CutoffResult find_t0(const OscillatorySum& s_in, const Tolerances& tol) {
  const OscillatorySum s = canonical(s_in, tol);
  if (s.empty()) return CutoffResult{std::nullopt, std::nullopt, CutoffCase::degenerate};

  const double r_top = s.complex_terms.empty() ? -1.0 : s.complex_terms.back().r;
  const double l_top = s.real_terms.empty() ? -1.0 : std::abs(s.real_terms.back().lambda);
  if (std::abs(r_top - l_top) <= tol.magnitude_tie)
    throw ValidationError("find_t0: dominant complex and real magnitudes coincide");
  if (s.complex_terms.size() > 1 &&
      std::abs(s.complex_terms[s.complex_terms.size() - 2].r - r_top) <= tol.magnitude_tie)
    throw ValidationError("find_t0: two rotation blocks share the dominant magnitude");
  if (s.real_terms.size() > 1 &&
      std::abs(std::abs(s.real_terms[s.real_terms.size() - 2].lambda) - l_top) <= tol.magnitude_tie)
    throw ValidationError("find_t0: two real terms share the dominant magnitude");

  return l_top > r_top ? real_dominant(s) : complex_dominant(s, tol);
}

std::int64_t find_n0(const OscillatorySum& s, double g_t0) {
  if (!(g_t0 > 0.0)) throw ValidationError("find_n0: reference value must be positive");
  const double zeta = s.dominant_magnitude();
  const double total = s.total_amplitude();
  if (zeta <= 0.0 || total <= 0.0) return 1;
  const double power = log_base(g_t0 / total, zeta);
  return std::max<std::int64_t>(1, ceil_index(power) + 1);
}

BezoutResult bezout_steps(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw ValidationError("bezout_steps: a and b must be positive");
  if (std::gcd(a, b) != 1) throw ValidationError("bezout_steps: a and b must be coprime");
  if (a >= 360 * b) throw ValidationError("bezout_steps: angle a/b must lie below 360 degrees");

  // Extended Euclid on (a, 360b).
  std::int64_t old_r = a, r = 360 * b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  BezoutResult out{old_s, old_t, old_r};
  if (out.n == 0) {
    out.n += 360 * b / out.g;
    out.l -= a / out.g;
  }
  return out;
}

RceInfResult rce_infinite(const OscillatorySum& s_in, const Tolerances& tol) {
  const OscillatorySum s = canonical(s_in, tol);
  RceInfResult out;
  const CutoffResult cut = find_t0(s, tol);
  if (!cut.t0) return out;

  const std::int64_t t0 = *cut.t0;
  const std::int64_t n0 = cut.n0 ? *cut.n0 : std::max(t0, find_n0(s, eval_g(s, t0)));
  if (n0 > kScanCap) throw ConvergenceError("rce_infinite: search range " + std::to_string(n0) + " exceeds the scan cap");
  out.kind = RceInfKind::attained;
  out.t0 = t0;
  out.search_limit = n0;
  out.t_star = 1;
  out.value = eval_g(s, 1);
  for (std::int64_t t = 2; t <= n0; ++t) {
    const double v = eval_g(s, t);
    if (v > out.value) {
      out.value = v;
      out.t_star = t;
    }
  }
  return out;
}

RceInfResult rce_infinite(const Matrix& m, const Vector& c, const Vector& x, const Tolerances& tol) {
  return rce_infinite(decompose(m, c, x, tol), tol);
}

RceInfResult rce_infinite_2d(double d, double kappa, double r, double theta, double alpha, double gamma) {
  if (!(theta > 0.0 && theta < kPi)) throw ValidationError("rce_infinite_2d: theta must lie in (0, pi)");
  if (!(r > 0.0 && r < 1.0)) throw ValidationError("rce_infinite_2d: r must lie in (0, 1)");
  if (!(d > 0.0)) throw ValidationError("rce_infinite_2d: amplitude must be positive");
  const double expect_kappa = std::hypot(std::log(r), theta);
  const double expect_gamma = std::atan2(theta, std::log(r));
  if (std::abs(kappa - expect_kappa) > 1e-9 * std::max(1.0, expect_kappa))
    throw ValidationError("rce_infinite_2d: kappa is not the modulus of ln r + i theta");
  const double gap = std::remainder(gamma - expect_gamma, 2.0 * kPi);
  if (std::abs(gap) > 1e-9) throw ValidationError("rce_infinite_2d: gamma is not the argument of ln r + i theta");

  auto g = [&](std::int64_t t) {
    const double td = static_cast<double>(t);
    return d * std::pow(r, td) * std::cos(td * theta + alpha);
  };

  const double x0 = (-kPi / 2.0 - alpha + 2.0 * kPi * std::ceil(alpha / (2.0 * kPi) + 0.25)) / theta;
  std::int64_t t0 = static_cast<std::int64_t>(std::floor(x0)) + 1;
  if (t0 < 1) t0 = 1;
  while (!(g(t0) > 0.0)) {
    ++t0;
    if (t0 > kScanCap) throw NumericError("rce_infinite_2d: no positive value near the closed-form index");
  }

  const double g0 = g(t0);
  const double m_star =
      1.0 + std::ceil((theta * log_base(g0 / (std::abs(std::sin(gamma)) * d), r) + alpha + gamma - kPi / 2.0) / kPi);
  const double x_limit = (kPi / 2.0 - alpha - gamma + m_star * kPi) / theta;
  const std::int64_t limit = std::max(t0, static_cast<std::int64_t>(std::floor(std::max(x_limit, 1.0))));
  if (limit > kScanCap) throw ConvergenceError("rce_infinite_2d: search range exceeds the scan cap");

  RceInfResult out;
  out.kind = RceInfKind::attained;
  out.t0 = t0;
  out.search_limit = limit;
  out.t_star = 1;
  out.value = g(1);
  for (std::int64_t t = 2; t <= limit; ++t) {
    const double v = g(t);
    if (v > out.value) {
      out.value = v;
      out.t_star = t;
    }
  }
  return out;
}

double geometric_w1(double rho, double rho_hat) {
  if (!(rho > 0.0 && rho <= 1.0) || !(rho_hat > 0.0 && rho_hat <= 1.0))
    throw ValidationError("geometric_w1: parameters must lie in (0, 1]");
  return std::abs(1.0 / rho - 1.0 / rho_hat);
}

double geometric_objective(const OscillatorySum& s, double rho, std::int64_t n0) {
  double total = 0.0;
  double survive = 1.0;  // (1−ρ)^{t−1}
  for (std::int64_t t = 1; t <= n0; ++t) {
    total += eval_g(s, t) * survive * rho;
    survive *= 1.0 - rho;
  }
  return total;
}

GeometricDrceResult geometric_drce(const OscillatorySum& s, double rho_hat, double xi, double eps) {
  if (!(rho_hat > 0.0 && rho_hat <= 1.0)) throw ValidationError("geometric_drce: rho_hat must lie in (0, 1]");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ValidationError("geometric_drce: radius must be nonnegative");
  if (!(eps > 0.0)) throw ValidationError("geometric_drce: eps must be positive");
  check_magnitudes(s);

  const double lo = rho_hat / (1.0 + rho_hat * xi);
  const double hi = rho_hat * xi < 1.0 ? std::min(1.0, rho_hat / (1.0 - rho_hat * xi)) : 1.0;
  if (!(lo > 0.0) || lo > hi) throw ValidationError("geometric_drce: feasible parameter interval is empty");

  const std::int64_t n0 = find_n0(s, eps);
  if (n0 > kScanCap) throw ConvergenceError("geometric_drce: truncation horizon exceeds the scan cap");
  Vector g(static_cast<std::size_t>(n0));
  for (std::int64_t t = 1; t <= n0; ++t) g[static_cast<std::size_t>(t - 1)] = eval_g(s, t);

  auto objective = [&](double rho) {
    double total = 0.0;
    double survive = 1.0;
    for (double gt : g) {
      total += gt * survive * rho;
      survive *= 1.0 - rho;
    }
    return total;
  };
  auto slope = [&](double rho) {
    // d/dρ of (1−ρ)^{t−1}ρ = (1−ρ)^{t−2}(1 − tρ).
    double total = g[0];
    double survive = 1.0;  // (1−ρ)^{t−2}
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double t = static_cast<double>(i + 1);
      total += g[i] * survive * (1.0 - t * rho);
      survive *= 1.0 - rho;
    }
    return total;
  };

  GeometricDrceResult out;
  out.interval_lo = lo;
  out.interval_hi = hi;
  out.n0 = n0;
  const double width = hi - lo;
  const int restarts = width > 0.0 ? 8 : 1;
  bool have = false;
  for (int k = 0; k < restarts; ++k) {
    double rho = restarts == 1 ? lo : lo + width * static_cast<double>(k) / (restarts - 1);
    double value = objective(rho);
    double step = 0.1 * width;
    for (int iter = 0; iter < 500 && step > 0.0; ++iter) {
      const double grad = slope(rho);
      if (grad == 0.0) break;
      const double cand = std::clamp(rho + (grad > 0.0 ? step : -step), lo, hi);
      const double cand_value = objective(cand);
      if (cand_value > value) {
        rho = cand;
        value = cand_value;
      } else {
        step *= 0.5;
      }
    }
    if (!have || value > out.value || (value == out.value && rho < out.rho_star)) {
      out.value = value;
      out.rho_star = rho;
      have = true;
    }
  }
  out.error_bound = eps * std::pow(1.0 - out.rho_star, static_cast<double>(n0));
  return out;
}

LinearInstance adversarial_instance(int k) {
  if (k < 1) throw ValidationError("adversarial_instance: k must be positive");
  double alpha = 0.0;
  for (int i = 1; i <= k; ++i) alpha += 4.0 / ((4.0 * i - 1.0) * (4.0 * i - 3.0));
  const double theta = 2.0 / (4.0 * k + 1.0);
  LinearInstance out;
  out.m = Matrix{{0.5 * std::cos(theta), -0.5 * std::sin(theta)}, {0.5 * std::sin(theta), 0.5 * std::cos(theta)}};
  out.c = {1.0, 0.0};
  out.x = {std::cos(alpha), std::sin(alpha)};
  return out;
}

WalkInstance dircyc_instance(const Matrix& adjacency) {
  if (!adjacency.square() || adjacency.rows() == 0) throw DimensionError("dircyc_instance: adjacency must be square");
  const std::size_t n = adjacency.rows();
  double max_col = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0) throw ValidationError("dircyc_instance: adjacency entries must be 0 or 1");
      col += v;
    }
    max_col = std::max(max_col, col);
  }
  const double r = 1.0 + max_col;
  WalkInstance out;
  out.m = adjacency * (1.0 / r);
  out.x = unit_vector(n, n - 1);
  out.c = scale(unit_vector(n, 0), -1.0);
  out.alpha = 0.0;
  return out;
}

}  // namespace drce
