#include "proxpoint/problem.hpp"

namespace proxpoint {

Problem::Problem(OperatorPtr op, Vector data, double weight)
    : K(std::move(op)), g(std::move(data)), alpha(weight) {
  if (!K) throw std::invalid_argument("Problem: null operator");
  if (g.size() != K->range_dim()) throw DimensionError("Problem data", K->range_dim(), g.size());
  if (!(alpha > 0)) throw std::invalid_argument("Problem: alpha must be positive");
}

double objective(const Problem& p, const Vector& u) {
  if (u.size() != p.domain_dim()) throw DimensionError("objective", p.domain_dim(), u.size());
  const Vector residual = p.K->apply(u) - p.g;
  return 0.5 * residual.squaredNorm() + p.alpha * u.lpNorm<1>();
}

double regularized_objective(const Problem& p, const Vector& u, double mu, const Vector& anchor) {
  if (!(mu > 0)) throw std::invalid_argument("regularized_objective: mu must be positive");
  if (anchor.size() != u.size())
    throw DimensionError("regularized_objective anchor", u.size(), anchor.size());
  return objective(p, u) + 0.5 * mu * (u - anchor).squaredNorm();
}

ScaledProblem ensure_unit_norm(const Problem& p) {
  const NormEstimate est = estimate_norm(*p.K, 500, 1e-9);
  if (est.value <= 1.0) return ScaledProblem{p, 1.0, false};
  const double c = 1.01 * est.value;
  Problem scaled(scale_operator(p.K, 1.0 / c), p.g / c, p.alpha / (c * c));
  return ScaledProblem{std::move(scaled), c, true};
}

}  // namespace proxpoint
