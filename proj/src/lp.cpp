#include "drce/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drce/errors.hpp"

namespace drce {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (n == 0) throw DimensionError("lp_solve: program has no variables");
  if (!lp.nonneg.empty() && lp.nonneg.size() != n)
    throw DimensionError("lp_solve: nonneg mask length differs from variable count");
  auto check = [n](const Matrix& lhs, const Vector& rhs, const char* what) {
    if (lhs.rows() != rhs.size())
      throw DimensionError(std::string("lp_solve: ") + what + " row count differs from rhs length");
    if (lhs.rows() > 0 && lhs.cols() != n)
      throw DimensionError(std::string("lp_solve: ") + what + " column count differs from variables");
  };
  check(lp.ineq_lhs, lp.ineq_rhs, "inequality");
  check(lp.eq_lhs, lp.eq_rhs, "equality");
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw ValidationError("lp_solve: objective must be finite");
  for (double v : lp.ineq_rhs)
    if (!std::isfinite(v)) throw ValidationError("lp_solve: rhs must be finite");
  for (double v : lp.eq_rhs)
    if (!std::isfinite(v)) throw ValidationError("lp_solve: rhs must be finite");
}

// Row-major tableau. Row `m` holds reduced costs (z_j − c_j); the last
// column holds the right-hand side (objective value in the cost row).
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : m_(m), w_(cols + 1), t_((m + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * w_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * w_ + c]; }
  double& rhs(std::size_t r) { return t_[r * w_ + w_ - 1]; }
  double rhs(std::size_t r) const { return t_[r * w_ + w_ - 1]; }
  [[nodiscard]] std::size_t rows() const { return m_; }
  [[nodiscard]] std::size_t cols() const { return w_ - 1; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &t_[pr * w_];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < w_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &t_[r * w_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  std::size_t m_;
  std::size_t w_;
  std::vector<double> t_;
};

enum class RunResult { optimal, unbounded };

// Bland's rule: lowest-index improving column, lowest-index basic variable
// among ratio-test ties.
RunResult run_simplex(Tableau& tab, std::vector<std::size_t>& basis,
                      const std::vector<bool>& allowed, const Tolerances& tol) {
  const std::size_t m = tab.rows();
  const std::size_t n = tab.cols();
  const std::size_t cap = 50 * (m + n) + 1000;
  const double cost_tol = 1e-10;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    std::size_t enter = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (allowed[j] && tab.at(m, j) < -cost_tol) {
        enter = j;
        break;
      }
    }
    if (enter == kNone) return RunResult::optimal;

    std::size_t leave = kNone;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a <= tol.lp_pivot) continue;
      const double ratio = tab.rhs(r) / a;
      const bool tie = leave != kNone && std::abs(ratio - best) <= 1e-12;
      if (leave == kNone || (!tie && ratio < best)) {
        best = ratio;
        leave = r;
      } else if (tie && basis[r] < basis[leave]) {
        leave = r;
      }
    }
    if (leave == kNone) return RunResult::unbounded;
    tab.pivot(leave, enter);
    basis[leave] = enter;
  }
  throw NumericError("lp_solve: simplex iteration cap reached");
}

}  // namespace

LpSolution lp_solve(const LinearProgram& lp, const Tolerances& tol) {
  validate(lp);
  const std::size_t nvar = lp.num_vars();
  const std::size_t m_in = lp.ineq_rhs.size();
  const std::size_t m_eq = lp.eq_rhs.size();
  const std::size_t m = m_in + m_eq;

  // Column layout: structural (free variables split into ±), slacks, artificials.
  std::vector<std::size_t> pos_col(nvar), neg_col(nvar, kNone);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nvar; ++j) {
    pos_col[j] = ncols++;
    const bool free = lp.nonneg.empty() ? true : !lp.nonneg[j];
    if (free) neg_col[j] = ncols++;
  }
  const std::size_t slack0 = ncols;
  ncols += m_in;

  std::vector<double> sign(m, 1.0);
  std::vector<bool> needs_art(m, true);
  for (std::size_t i = 0; i < m_in; ++i) {
    if (lp.ineq_rhs[i] < 0.0) sign[i] = -1.0;
    else needs_art[i] = false;  // slack starts basic
  }
  for (std::size_t i = 0; i < m_eq; ++i)
    if (lp.eq_rhs[i] < 0.0) sign[m_in + i] = -1.0;

  std::vector<std::size_t> art_col(m, kNone);
  const std::size_t art0 = ncols;
  for (std::size_t i = 0; i < m; ++i)
    if (needs_art[i]) art_col[i] = ncols++;

  Tableau tab(m, ncols);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_eq = i >= m_in;
    const auto row = is_eq ? lp.eq_lhs.row(i - m_in) : lp.ineq_lhs.row(i);
    const double b = is_eq ? lp.eq_rhs[i - m_in] : lp.ineq_rhs[i];
    for (std::size_t j = 0; j < nvar; ++j) {
      tab.at(i, pos_col[j]) = sign[i] * row[j];
      if (neg_col[j] != kNone) tab.at(i, neg_col[j]) = -sign[i] * row[j];
    }
    if (!is_eq) tab.at(i, slack0 + i) = sign[i];
    tab.rhs(i) = sign[i] * b;
    if (art_col[i] != kNone) {
      tab.at(i, art_col[i]) = 1.0;
      basis[i] = art_col[i];
    } else {
      basis[i] = slack0 + i;
    }
  }

  std::vector<bool> allowed(ncols, true);
  std::vector<bool> row_active(m, true);

  // Phase 1: maximize −Σ artificials.
  if (art0 < ncols) {
    for (std::size_t i = 0; i < m; ++i) {
      if (art_col[i] == kNone) continue;
      for (std::size_t c = 0; c <= ncols; ++c) {
        if (c < ncols && c >= art0) continue;
        const double v = c == ncols ? tab.rhs(i) : tab.at(i, c);
        if (c == ncols) tab.rhs(m) -= v;
        else tab.at(m, c) -= v;
      }
    }
    run_simplex(tab, basis, allowed, tol);
    if (tab.rhs(m) < -tol.lp_feasibility) return LpSolution{LpStatus::infeasible, {}, 0.0};

    // Drive zero-level artificials out of the basis; rows that cannot pivot are redundant.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < art0) continue;
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(tab.at(r, j)) > tol.lp_pivot) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) {
        row_active[r] = false;
        for (std::size_t c = 0; c <= ncols; ++c) tab.at(r, c) = 0.0;
        continue;
      }
      tab.pivot(r, enter);
      basis[r] = enter;
    }
    for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;
  }

  // Phase 2 reduced costs for the true objective.
  std::vector<double> cost(ncols, 0.0);
  for (std::size_t j = 0; j < nvar; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != kNone) cost[neg_col[j]] = -lp.objective[j];
  }
  for (std::size_t c = 0; c <= ncols; ++c) {
    if (c == ncols) tab.rhs(m) = 0.0;
    else tab.at(m, c) = -cost[c];
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (!row_active[r]) continue;
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < ncols; ++c) tab.at(m, c) += cb * tab.at(r, c);
    tab.rhs(m) += cb * tab.rhs(r);
  }

  if (run_simplex(tab, basis, allowed, tol) == RunResult::unbounded)
    return LpSolution{LpStatus::unbounded, {}, 0.0};

  std::vector<double> column_value(ncols, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (row_active[r]) column_value[basis[r]] = tab.rhs(r);

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.point.assign(nvar, 0.0);
  for (std::size_t j = 0; j < nvar; ++j) {
    sol.point[j] = column_value[pos_col[j]];
    if (neg_col[j] != kNone) sol.point[j] -= column_value[neg_col[j]];
  }
  sol.value = dot(lp.objective, sol.point);

  // Verify the basis: a violation here means the pivots lost accuracy.
  const double scale = std::max(1.0, norm_inf(sol.point));
  auto violated = [&](double residual) { return residual > tol.lp_feasibility * scale; };
  for (std::size_t i = 0; i < m_in; ++i)
    if (violated(dot(lp.ineq_lhs.row(i), sol.point) - lp.ineq_rhs[i]))
      throw NumericError("lp_solve: numeric instability, inequality " + std::to_string(i) +
                         " violated at the reported optimum");
  for (std::size_t i = 0; i < m_eq; ++i)
    if (violated(std::abs(dot(lp.eq_lhs.row(i), sol.point) - lp.eq_rhs[i])))
      throw NumericError("lp_solve: numeric instability, equality " + std::to_string(i) +
                         " violated at the reported optimum");
  for (std::size_t j = 0; j < nvar; ++j)
    if (!lp.nonneg.empty() && lp.nonneg[j] && violated(-sol.point[j]))
      throw NumericError("lp_solve: numeric instability, variable " + std::to_string(j) +
                         " negative at the reported optimum");
  return sol;
}

}  // namespace drce
