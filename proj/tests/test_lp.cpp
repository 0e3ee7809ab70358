#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "drce/errors.hpp"
#include "drce/lp.hpp"
#include "support.hpp"

using namespace drce;
using testing_support::Gen;

namespace {

// Brute force: intersect every n-subset of constraint hyperplanes, keep the
// feasible points, return the best objective.
double vertex_enumeration(const Matrix& a, const Vector& b, const Vector& c) {
  const std::size_t n = c.size();
  const std::size_t m = a.rows();
  Matrix all(m + n, n);
  Vector rhs(m + n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) all(i, j) = a(i, j);
    rhs[i] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) all(m + j, j) = -1.0;  // −x ≤ 0

  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> pick(m + n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
  do {
    Matrix sys(n, n);
    Vector sr(n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < m + n; ++i) {
      if (!pick[i]) continue;
      for (std::size_t j = 0; j < n; ++j) sys(row, j) = all(i, j);
      sr[row++] = rhs[i];
    }
    LuDecomposition lu(sys, 1e-10);
    if (lu.singular()) continue;
    const Vector x = lu.solve(sr);
    bool ok = true;
    for (std::size_t i = 0; i < m + n && ok; ++i) ok = dot(all.row(i), x) <= rhs[i] + 1e-9;
    if (ok) best = std::max(best, dot(c, x));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_CASE("one-variable program") {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.ineq_lhs = Matrix{{1.0}};
  lp.ineq_rhs = {3.0};
  lp.nonneg = {true};
  const auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(3.0));
}

TEST_CASE("simplex face") {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.ineq_lhs = Matrix{{1.0, 1.0}};
  lp.ineq_rhs = {1.0};
  lp.nonneg = {true, true};
  const auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
}

TEST_CASE("equality plus inequality") {
  LinearProgram lp;
  lp.objective = {0.0, 1.0};
  lp.ineq_lhs = Matrix{{-1.0, 1.0}};
  lp.ineq_rhs = {0.0};
  lp.eq_lhs = Matrix{{1.0, 1.0}};
  lp.eq_rhs = {1.0};
  lp.nonneg = {true, true};
  const auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.point[0] == doctest::Approx(0.5));
  CHECK(sol.point[1] == doctest::Approx(0.5));
}

TEST_CASE("infeasible and unbounded statuses") {
  LinearProgram infeasible;
  infeasible.objective = {1.0};
  infeasible.ineq_lhs = Matrix{{1.0}};
  infeasible.ineq_rhs = {-1.0};
  infeasible.nonneg = {true};
  CHECK(lp_solve(infeasible).status == LpStatus::infeasible);

  LinearProgram unbounded;
  unbounded.objective = {1.0, 0.0};
  unbounded.ineq_lhs = Matrix{{-1.0, 1.0}};
  unbounded.ineq_rhs = {1.0};
  unbounded.nonneg = {true, true};
  CHECK(lp_solve(unbounded).status == LpStatus::unbounded);
  CHECK(std::string(to_string(LpStatus::unbounded)) == "unbounded");
}

TEST_CASE("free variables and negative right-hand sides") {
  // max −x s.t. x ≥ −2 (written as −x ≤ 2), x free → x = −2.
  LinearProgram lp;
  lp.objective = {-1.0};
  lp.ineq_lhs = Matrix{{-1.0}};
  lp.ineq_rhs = {2.0};
  auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.point[0] == doctest::Approx(-2.0));

  // max x s.t. x ≤ −1, x free.
  lp.objective = {1.0};
  lp.ineq_lhs = Matrix{{1.0}};
  lp.ineq_rhs = {-1.0};
  sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(-1.0));
}

TEST_CASE("redundant equality rows") {
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.eq_lhs = Matrix{{1.0, 1.0}, {2.0, 2.0}};
  lp.eq_rhs = {1.0, 2.0};
  lp.nonneg = {true, true};
  const auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(2.0));
}

TEST_CASE("degenerate program terminates") {
  // Classic cycling example under the largest-coefficient rule.
  LinearProgram lp;
  lp.objective = {10.0, -57.0, -9.0, -24.0};
  lp.ineq_lhs = Matrix{{0.5, -5.5, -2.5, 9.0}, {0.5, -1.5, -0.5, 1.0}, {1.0, 0.0, 0.0, 0.0}};
  lp.ineq_rhs = {0.0, 0.0, 1.0};
  lp.nonneg = {true, true, true, true};
  const auto sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
}

TEST_CASE("dimension validation") {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.ineq_lhs = Matrix{{1.0}};
  lp.ineq_rhs = {1.0};
  CHECK_THROWS_AS(lp_solve(lp), DimensionError);
  lp.ineq_lhs = Matrix{{1.0, 1.0}};
  lp.nonneg = {true};
  CHECK_THROWS_AS(lp_solve(lp), DimensionError);
}

TEST_CASE("simplex agrees with exhaustive vertex enumeration") {
  Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = gen.index(1, 6);
    const std::size_t m = gen.index(1, 5);
    Matrix a = gen.matrix(m + n, n);
    Vector b = gen.vector(m + n, 0.1, 2.0);
    // Box rows keep the program bounded.
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a(m + j, k) = j == k ? 1.0 : 0.0;
      b[m + j] = 3.0;
    }
    const Vector c = gen.vector(n);

    LinearProgram lp;
    lp.objective = c;
    lp.ineq_lhs = a;
    lp.ineq_rhs = b;
    lp.nonneg.assign(n, true);
    const auto sol = lp_solve(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(std::abs(sol.value - vertex_enumeration(a, b, c)) < 1e-7);
    CHECK(std::abs(sol.value - dot(c, sol.point)) < 1e-7);
    for (std::size_t i = 0; i < a.rows(); ++i) CHECK(dot(a.row(i), sol.point) <= b[i] + 1e-7);
  }
}

TEST_CASE("row permutation leaves the optimum unchanged") {
  Gen gen(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.index(2, 6);
    const std::size_t m = gen.index(2, 8);
    LinearProgram lp;
    lp.objective = gen.vector(n);
    lp.ineq_lhs = gen.matrix(m, n, 0.0, 1.0);
    lp.ineq_rhs = gen.vector(m, 0.5, 2.0);
    lp.nonneg.assign(n, true);
    for (std::size_t j = 0; j < n; ++j) lp.ineq_lhs(0, j) += 0.1;  // bounded

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen.engine());
    LinearProgram permuted = lp;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) permuted.ineq_lhs(i, j) = lp.ineq_lhs(order[i], j);
      permuted.ineq_rhs[i] = lp.ineq_rhs[order[i]];
    }
    const auto s1 = lp_solve(lp);
    const auto s2 = lp_solve(permuted);
    REQUIRE(s1.status == LpStatus::optimal);
    REQUIRE(s2.status == LpStatus::optimal);
    CHECK(std::abs(s1.value - s2.value) < 1e-9);
  }
}
