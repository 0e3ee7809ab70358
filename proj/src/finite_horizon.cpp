#include "drce/finite_horizon.hpp"

#include <cmath>

#include "drce/errors.hpp"

namespace drce {

namespace {

void check_inputs(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon) {
  if (!m.square()) throw DimensionError("cost sequence: matrix must be square");
  if (x0.size() != m.rows()) throw DimensionError("cost sequence: initial state has wrong length");
  if (c.size() != m.rows()) throw DimensionError("cost sequence: cost vector has wrong length");
  if (horizon == 0) throw ValidationError("cost sequence: horizon must be at least 1");
}

}  // namespace

CostSequence cost_sequence_naive(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon) {
  check_inputs(m, x0, c, horizon);
  CostSequence out{horizon, Vector(horizon)};
  Vector state = x0;
  for (std::size_t t = 0; t < horizon; ++t) {
    state = mat_vec(m, state);
    out.values[t] = dot(c, state);
  }
  return out;
}

CostSequence cost_sequence_sabs(const Matrix& m, const Vector& x0, const Vector& c, std::size_t horizon) {
  check_inputs(m, x0, c, horizon);
  if (horizon < 4) return cost_sequence_naive(m, x0, c, horizon);

  const auto stride = static_cast<std::size_t>(std::sqrt(static_cast<double>(horizon)));
  std::size_t b = stride;
  while (b * b > horizon) --b;
  while ((b + 1) * (b + 1) <= horizon) ++b;

  const Matrix big_step = mat_pow(m, b);
  std::vector<Vector> big(b + 1);  // big[k] = M^{kB} x₀
  big[0] = x0;
  for (std::size_t k = 1; k <= b; ++k) big[k] = mat_vec(big_step, big[k - 1]);

  std::vector<Vector> small(b);  // small[j] = (Mᵀ)ʲ c
  small[0] = c;
  for (std::size_t j = 1; j < b; ++j) small[j] = mat_t_vec(m, small[j - 1]);

  CostSequence out{horizon, Vector(horizon)};
  for (std::size_t t = 1; t <= b * b; ++t) out.values[t - 1] = dot(small[t % b], big[t / b]);

  Vector state = big[b];
  for (std::size_t t = b * b + 1; t <= horizon; ++t) {
    state = mat_vec(m, state);
    out.values[t - 1] = dot(c, state);
  }
  return out;
}

RceFiniteResult rce_finite(const CostSequence& seq) {
  if (seq.values.empty()) throw ValidationError("rce_finite: empty cost sequence");
  RceFiniteResult best{1, seq.values[0]};
  for (std::size_t t = 1; t < seq.values.size(); ++t)
    if (seq.values[t] > best.value) best = {t + 1, seq.values[t]};
  return best;
}

}  // namespace drce
