#include "drce/wasserstein.hpp"

#include <cmath>
#include <string>

#include "drce/errors.hpp"
#include "drce/lp.hpp"

namespace drce {

GroundDistance GroundDistance::line() { return GroundDistance{}; }

GroundDistance GroundDistance::explicit_matrix(Matrix d) {
  if (!d.square()) throw DimensionError("ground distance: matrix must be square");
  const std::size_t n = d.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw ValidationError("ground distance: diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !(d(i, j) > 0.0)) throw ValidationError("ground distance: off-diagonal entries must be positive");
      if (d(i, j) != d(j, i)) throw ValidationError("ground distance: matrix must be symmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, j) + d(j, k) < d(i, k) - 1e-12)
          throw ValidationError("ground distance: triangle inequality fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
  GroundDistance out;
  out.matrix_ = std::move(d);
  return out;
}

double GroundDistance::operator()(std::size_t i, std::size_t j) const {
  if (matrix_) return (*matrix_)(i, j);
  return i > j ? static_cast<double>(i - j) : static_cast<double>(j - i);
}

void GroundDistance::check_support(std::size_t support) const {
  if (matrix_ && matrix_->rows() != support)
    throw DimensionError("ground distance: metric size differs from support size");
}

const char* to_string(DrceCase c) { return c == DrceCase::lp ? "lp" : "vertex-enumeration"; }

namespace {

void check_distribution(const Vector& p, const Tolerances& tol, const char* what) {
  if (p.empty()) throw ValidationError(std::string(what) + ": empty distribution");
  for (double v : p)
    if (!(v >= -tol.negative_clamp)) throw ValidationError(std::string(what) + ": negative probability");
  if (std::abs(sum(p) - 1.0) > tol.stochastic_sum)
    throw ValidationError(std::string(what) + ": probabilities must sum to 1");
}

void check_ambiguity(const CostSequence& seq, const AmbiguitySet& amb, const Tolerances& tol) {
  if (!(amb.radius >= 0.0) || !std::isfinite(amb.radius))
    throw ValidationError("drce: radius must be a nonnegative finite number");
  check_distribution(amb.nominal, tol, "drce nominal");
  if (seq.values.size() != amb.nominal.size())
    throw DimensionError("drce: cost sequence length differs from nominal support");
  if (!amb.distance.is_line())
    throw ValidationError("drce: the vertex description of the ball requires the line distance");
}

double expectation(const Vector& q, const Vector& g) { return dot(q, g); }

}  // namespace

double w_norm(const Vector& mu, const GroundDistance& d, const Tolerances& tol) {
  if (mu.empty()) throw ValidationError("w_norm: empty vector");
  if (std::abs(sum(mu)) > tol.balance) throw ValidationError("w_norm: entries must sum to zero");
  const std::size_t n = mu.size();
  d.check_support(n);
  if (n == 1) return 0.0;

  LinearProgram lp;
  lp.objective = mu;
  // On the line, adjacent constraints |x_i − x_{i+1}| ≤ 1 imply all others.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (d.is_line()) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      pairs.emplace_back(i, i + 1);
      pairs.emplace_back(i + 1, i);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) pairs.emplace_back(i, j);
  }
  lp.ineq_lhs = Matrix(pairs.size(), n);
  lp.ineq_rhs.resize(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    lp.ineq_lhs(r, pairs[r].first) = 1.0;
    lp.ineq_lhs(r, pairs[r].second) = -1.0;
    lp.ineq_rhs[r] = d(pairs[r].first, pairs[r].second);
  }
  lp.eq_lhs = Matrix(1, n, 1.0);
  lp.eq_rhs = {0.0};

  const auto sol = lp_solve(lp, tol);
  if (sol.status != LpStatus::optimal)
    throw NumericError(std::string("w_norm: program reported ") + to_string(sol.status));
  return sol.value;
}

double w1_distance(const Vector& p, const Vector& q, const GroundDistance& d, const Tolerances& tol) {
  if (p.size() != q.size()) throw DimensionError("w1_distance: supports differ in size");
  check_distribution(p, tol, "w1_distance");
  check_distribution(q, tol, "w1_distance");
  return w_norm(sub(p, q), d, tol);
}

double w1_line_cdf(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) throw DimensionError("w1_line_cdf: supports differ in size");
  double cp = 0.0;
  double cq = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cp += p[i];
    cq += q[i];
    total += std::abs(cp - cq);
  }
  return total;
}

std::vector<Vector> unit_ball_vertices(std::size_t support) {
  if (support < 2) throw ValidationError("unit_ball_vertices: support must have at least two points");
  std::vector<Vector> out;
  out.reserve(2 * (support - 1));
  for (std::size_t i = 0; i + 1 < support; ++i) {
    Vector v(support, 0.0);
    v[i] = 1.0;
    v[i + 1] = -1.0;
    out.push_back(v);
    out.push_back(scale(v, -1.0));
  }
  return out;
}

DrceSolution drce_finite_lp(const CostSequence& seq, const AmbiguitySet& amb, const Tolerances& tol) {
  check_ambiguity(seq, amb, tol);
  const std::size_t horizon = amb.nominal.size();
  if (horizon == 1) return DrceSolution{seq.values[0], amb.nominal, DrceCase::lp};

  const auto vertices = unit_ball_vertices(horizon);
  const std::size_t nv = vertices.size();
  const std::size_t nvar = horizon + nv;

  LinearProgram lp;
  lp.objective.assign(nvar, 0.0);
  for (std::size_t t = 0; t < horizon; ++t) lp.objective[t] = seq.values[t];
  lp.eq_lhs = Matrix(horizon + 1, nvar);
  lp.eq_rhs.assign(horizon + 1, 0.0);
  for (std::size_t t = 0; t < horizon; ++t) {
    lp.eq_lhs(t, t) = 1.0;
    for (std::size_t k = 0; k < nv; ++k) lp.eq_lhs(t, horizon + k) = -amb.radius * vertices[k][t];
    lp.eq_rhs[t] = amb.nominal[t];
  }
  for (std::size_t k = 0; k < nv; ++k) lp.eq_lhs(horizon, horizon + k) = 1.0;
  lp.eq_rhs[horizon] = 1.0;
  lp.nonneg.assign(nvar, true);

  const auto sol = lp_solve(lp, tol);
  if (sol.status != LpStatus::optimal)
    throw NumericError(std::string("drce: program reported ") + to_string(sol.status) +
                       " (the nominal distribution is always feasible)");
  DrceSolution out;
  out.case_used = DrceCase::lp;
  out.worst_q.assign(sol.point.begin(), sol.point.begin() + static_cast<long>(horizon));
  out.value = sol.value;
  return out;
}

DrceSolution drce_finite(const CostSequence& seq, const AmbiguitySet& amb, const Tolerances& tol) {
  check_ambiguity(seq, amb, tol);
  const std::size_t horizon = amb.nominal.size();
  if (horizon == 1) return DrceSolution{seq.values[0], amb.nominal, DrceCase::vertex_enumeration};

  const auto vertices = unit_ball_vertices(horizon);
  std::vector<Vector> shifted;
  shifted.reserve(vertices.size());
  for (const auto& v : vertices) {
    Vector q = amb.nominal;
    for (std::size_t t = 0; t < horizon; ++t) q[t] += amb.radius * v[t];
    for (double x : q)
      if (x < -tol.vertex_negativity) return drce_finite_lp(seq, amb, tol);
    shifted.push_back(std::move(q));
  }

  DrceSolution best{expectation(shifted[0], seq.values), shifted[0], DrceCase::vertex_enumeration};
  for (std::size_t k = 1; k < shifted.size(); ++k) {
    const double value = expectation(shifted[k], seq.values);
    if (value > best.value) {
      best.value = value;
      best.worst_q = shifted[k];
    }
  }
  const double nominal_value = expectation(amb.nominal, seq.values);
  if (nominal_value > best.value) {
    best.value = nominal_value;
    best.worst_q = amb.nominal;
  }
  return best;
}

InitialUncertaintyResult drce_with_initial_uncertainty(const Matrix& m, const Vector& x_hat0,
                                                       const std::vector<Vector>& offsets,
                                                       const Vector& c, const AmbiguitySet& amb,
                                                       const Tolerances& tol) {
  if (offsets.empty()) throw ValidationError("drce_with_initial_uncertainty: no initial-state vertices");
  InitialUncertaintyResult best;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i].size() != x_hat0.size())
      throw DimensionError("drce_with_initial_uncertainty: offset has wrong length");
    const auto seq = cost_sequence_sabs(m, add(x_hat0, offsets[i]), c, amb.nominal.size());
    auto sol = drce_finite(seq, amb, tol);
    if (i == 0 || sol.value > best.value) {
      best.value = sol.value;
      best.best_vertex = i;
      best.solution = std::move(sol);
    }
  }
  return best;
}

}  // namespace drce
