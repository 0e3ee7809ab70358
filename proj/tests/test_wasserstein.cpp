#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "drce/errors.hpp"
#include "drce/lp.hpp"
#include "drce/wasserstein.hpp"
#include "support.hpp"

using namespace drce;
using testing_support::Gen;
using testing_support::balanced;

namespace {

const GroundDistance kLine = GroundDistance::line();

// Is `point` a convex combination of `vertices`? Feasibility program.
bool in_hull(const Vector& point, const std::vector<Vector>& vertices) {
  const std::size_t n = point.size();
  LinearProgram lp;
  lp.objective.assign(vertices.size(), 0.0);
  lp.eq_lhs = Matrix(n + 1, vertices.size());
  lp.eq_rhs = point;
  lp.eq_rhs.push_back(1.0);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) lp.eq_lhs(i, k) = vertices[k][i];
    lp.eq_lhs(n, k) = 1.0;
  }
  lp.nonneg.assign(vertices.size(), true);
  return lp_solve(lp).status == LpStatus::optimal;
}

Matrix line_matrix(std::size_t n) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(static_cast<double>(i) - static_cast<double>(j));
  return d;
}

}  // namespace

TEST_CASE("w_norm examples") {
  CHECK(w_norm(Vector{0, 0, 0}, kLine) == doctest::Approx(0.0));
  CHECK(w_norm(Vector{1, -1}, kLine) == doctest::Approx(1.0));
  CHECK(w_norm(Vector{1, 0, -1}, kLine) == doctest::Approx(2.0));
  CHECK_THROWS_AS(w_norm(Vector{1, 0}, kLine), ValidationError);
}

TEST_CASE("explicit metric agrees with the line") {
  const auto explicit_line = GroundDistance::explicit_matrix(line_matrix(5));
  Gen gen(51);
  for (int k = 0; k < 20; ++k) {
    const Vector mu = balanced(gen, 5);
    CHECK(std::abs(w_norm(mu, explicit_line) - w_norm(mu, kLine)) < 1e-9);
  }
  CHECK_THROWS_AS(GroundDistance::explicit_matrix(Matrix{{0, 1}, {2, 0}}), ValidationError);
  CHECK_THROWS_AS(GroundDistance::explicit_matrix(Matrix{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), ValidationError);
  CHECK_THROWS_AS(w_norm(Vector{1, -1}, explicit_line), DimensionError);
}

TEST_CASE("w1_distance examples") {
  CHECK(w1_distance(Vector{0.2, 0.8}, Vector{0.2, 0.8}, kLine) == doctest::Approx(0.0));
  CHECK(w1_distance(Vector{1, 0, 0}, Vector{0, 0, 1}, kLine) == doctest::Approx(2.0));
  CHECK(w1_distance(Vector{0.5, 0.5, 0}, Vector{0, 1, 0}, kLine) == doctest::Approx(0.5));
  CHECK_THROWS_AS(w1_distance(Vector{0.5, 0.6}, Vector{0.5, 0.5}, kLine), ValidationError);
}

TEST_CASE("LP distance equals the CDF formula on the line") {
  Gen gen(52);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = gen.index(2, 25);
    const Vector p = gen.simplex(n);
    const Vector q = gen.simplex(n);
    CHECK(std::abs(w1_distance(p, q, kLine) - w1_line_cdf(p, q)) <= 1e-7);
  }
}

TEST_CASE("unit ball vertices") {
  const auto two = unit_ball_vertices(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Vector{1, -1});
  CHECK(two[1] == Vector{-1, 1});
  CHECK(unit_ball_vertices(3).size() == 4);
  for (std::size_t t = 2; t <= 8; ++t)
    for (const auto& v : unit_ball_vertices(t)) CHECK(std::abs(w_norm(v, kLine) - 1.0) < 1e-9);
  CHECK_THROWS_AS(unit_ball_vertices(1), ValidationError);
}

TEST_CASE("norm axioms") {
  Gen gen(53);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = gen.index(2, 12);
    const Vector a = balanced(gen, n);
    const Vector b = balanced(gen, n);
    const double s = gen.uniform(-3.0, 3.0);
    CHECK(std::abs(w_norm(scale(a, s), kLine) - std::abs(s) * w_norm(a, kLine)) < 1e-8);
    CHECK(w_norm(add(a, b), kLine) <= w_norm(a, kLine) + w_norm(b, kLine) + 1e-8);
    CHECK(w_norm(a, kLine) > 1e-9);
  }
  CHECK(w_norm(Vector{1e-12, -1e-12}, kLine) <= 1e-9);
}

TEST_CASE("unit ball is the hull of the adjacent differences") {
  Gen gen(54);
  for (std::size_t t : {2u, 3u, 4u}) {
    const auto vertices = unit_ball_vertices(t);
    for (int k = 0; k < 200; ++k) {
      // Points of the hull stay inside the ball.
      const Vector weights = gen.simplex(vertices.size());
      Vector p(t, 0.0);
      for (std::size_t j = 0; j < vertices.size(); ++j)
        for (std::size_t i = 0; i < t; ++i) p[i] += weights[j] * vertices[j][i];
      CHECK(w_norm(p, kLine) <= 1.0 + 1e-7);

      // Boundary points of the ball lie in the hull; pushed outward they leave the ball.
      const Vector mu = balanced(gen, t);
      const Vector boundary = scale(mu, 1.0 / w_norm(mu, kLine));
      CHECK(in_hull(boundary, vertices));
      const Vector outside = scale(boundary, 1.0 + 1e-3);
      CHECK(w_norm(outside, kLine) > 1.0);
      CHECK_FALSE(in_hull(outside, vertices));
    }
  }
}

TEST_CASE("long-range differences are not extreme points") {
  for (std::size_t t = 3; t <= 7; ++t) {
    const auto vertices = unit_ball_vertices(t);
    for (std::size_t s = 0; s < t; ++s)
      for (std::size_t e = s + 2; e < t; ++e) {
        Vector v(t, 0.0);
        const double len = static_cast<double>(e - s);
        for (std::size_t k = s; k < e; ++k) {
          v[k] += 1.0 / len;
          v[k + 1] -= 1.0 / len;
        }
        CHECK(v[s] == doctest::Approx(1.0 / len));
        CHECK(v[e] == doctest::Approx(-1.0 / len));
        CHECK(std::abs(w_norm(v, kLine) - 1.0) < 1e-9);
      }
  }
}

TEST_CASE("drce fixtures") {
  const Vector third(3, 1.0 / 3.0);
  auto sol = drce_finite(CostSequence{3, {1, 0, 0}}, AmbiguitySet{third, 0.1});
  CHECK(sol.case_used == DrceCase::vertex_enumeration);
  CHECK(std::abs(sol.value - 13.0 / 30.0) <= 1e-9);
  CHECK(std::abs(sol.worst_q[0] - (1.0 / 3.0 + 0.1)) <= 1e-12);
  CHECK(std::abs(sol.worst_q[1] - (1.0 / 3.0 - 0.1)) <= 1e-12);
  CHECK(std::abs(sol.worst_q[2] - 1.0 / 3.0) <= 1e-12);

  sol = drce_finite(CostSequence{3, {0.3, -1, 2}}, AmbiguitySet{Vector{0.2, 0.5, 0.3}, 0.0});
  CHECK(sol.value == doctest::Approx(0.06 - 0.5 + 0.6));

  sol = drce_finite(CostSequence{3, {0, 1, 0}}, AmbiguitySet{Vector{1, 0, 0}, 0.5});
  CHECK(sol.case_used == DrceCase::lp);
  CHECK(std::abs(sol.value - 0.5) <= 1e-9);
  CHECK(std::abs(sol.worst_q[0] - 0.5) <= 1e-9);
  CHECK(std::abs(sol.worst_q[1] - 0.5) <= 1e-9);
  CHECK(std::abs(sol.worst_q[2]) <= 1e-9);
}

TEST_CASE("drce validation") {
  const CostSequence seq{2, {1, 2}};
  CHECK_THROWS_AS(drce_finite(seq, AmbiguitySet{Vector{0.5, 0.5}, -0.1}), ValidationError);
  CHECK_THROWS_AS(drce_finite(seq, AmbiguitySet{Vector{0.5, 0.6}, 0.1}), ValidationError);
  CHECK_THROWS_AS(drce_finite(seq, AmbiguitySet{Vector{1.0}, 0.1}), DimensionError);
}

TEST_CASE("drce properties on random instances") {
  Gen gen(55);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t t = gen.index(2, 12);
    const CostSequence seq{t, gen.vector(t, -1.0, 2.0)};
    const Vector nominal = gen.simplex(t);
    const double base = dot(nominal, seq.values);

    double previous = -1e300;
    for (double xi : {0.0, 0.01, 0.05, 0.2, 0.7, 2.0}) {
      const auto sol = drce_finite(seq, AmbiguitySet{nominal, xi});
      CHECK(sol.value >= previous - 1e-9);
      CHECK(sol.value >= base - 1e-9);
      CHECK(std::abs(sum(sol.worst_q) - 1.0) <= 1e-7);
      for (double q : sol.worst_q) CHECK(q >= -1e-7);
      CHECK(w1_line_cdf(nominal, sol.worst_q) <= xi + 1e-7);
      CHECK(std::abs(dot(sol.worst_q, seq.values) - sol.value) <= 1e-7);
      previous = sol.value;
    }
    const double rce = *std::max_element(seq.values.begin(), seq.values.end());
    const auto wide = drce_finite(seq, AmbiguitySet{nominal, static_cast<double>(t - 1)});
    CHECK(std::abs(wide.value - rce) <= 1e-7);
  }
}

TEST_CASE("vertex enumeration and the LP agree when both apply") {
  Gen gen(56);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t = gen.index(2, 15);
    const CostSequence seq{t, gen.vector(t)};
    Vector nominal = gen.simplex(t);
    const double floor = *std::min_element(nominal.begin(), nominal.end());
    const double xi = gen.uniform(0.0, 1.0) * floor;
    const auto fast = drce_finite(seq, AmbiguitySet{nominal, xi});
    if (fast.case_used != DrceCase::vertex_enumeration) continue;
    const auto lp = drce_finite_lp(seq, AmbiguitySet{nominal, xi});
    CHECK(std::abs(fast.value - lp.value) <= 1e-7);
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("initial-state uncertainty") {
  const Matrix m{{0.9, 0.2}, {0.1, 0.8}};
  const Vector x_hat{0.5, 0.5};
  const Vector c{1, 0};
  const AmbiguitySet amb{Vector{0.25, 0.25, 0.25, 0.25}, 0.1};

  const auto single = drce_with_initial_uncertainty(m, x_hat, {Vector{0, 0}}, c, amb);
  const auto direct = drce_finite(cost_sequence_naive(m, x_hat, c, 4), amb);
  CHECK(single.best_vertex == 0);
  CHECK(single.value == doctest::Approx(direct.value).epsilon(1e-14));

  // Shifting mass toward state 0 raises every ⟨c, Mᵗx⟩.
  const auto pair = drce_with_initial_uncertainty(m, x_hat, {Vector{-0.2, 0.2}, Vector{0.2, -0.2}}, c, amb);
  CHECK(pair.best_vertex == 1);
  CHECK_THROWS_AS(drce_with_initial_uncertainty(m, x_hat, {}, c, amb), ValidationError);
}

TEST_CASE("vertex optimum dominates convex combinations") {
  Gen gen(57);
  const Matrix m = gen.chain(3);
  const Vector x_hat{0.4, 0.3, 0.3};
  const Vector c = gen.vector(3);
  const std::vector<Vector> offsets{{0.2, -0.1, -0.1}, {-0.1, 0.2, -0.1}, {-0.1, -0.1, 0.2}};
  const AmbiguitySet amb{Vector{0.1, 0.2, 0.3, 0.4}, 0.15};
  const auto best = drce_with_initial_uncertainty(m, x_hat, offsets, c, amb);

  double grid_max = -1e300;
  const int steps = 40;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      const double a = static_cast<double>(i) / steps;
      const double b = static_cast<double>(j) / steps;
      Vector u(3, 0.0);
      for (std::size_t k = 0; k < 3; ++k) u[k] = a * offsets[0][k] + b * offsets[1][k] + (1 - a - b) * offsets[2][k];
      const auto sol = drce_finite(cost_sequence_naive(m, add(x_hat, u), c, 4), amb);
      grid_max = std::max(grid_max, sol.value);
    }
  CHECK(best.value >= grid_max - 1e-6);
}
