#include "proxpoint/ista.hpp"

namespace proxpoint {

void IstaParams::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("IstaParams: step_size must be positive");
  if (max_iters < 1) throw std::invalid_argument("IstaParams: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("IstaParams: tol must be >= 0");
}

IstaResult ista_run(const Problem& p, const Vector& u0, const IstaParams& params) {
  params.validate();
  if (u0.size() != p.domain_dim()) throw DimensionError("ista_run u0", p.domain_dim(), u0.size());
  if (!u0.allFinite()) throw std::invalid_argument("ista_run: non-finite start");

  const ScaledProblem sp = ensure_unit_norm(p);
  const Problem& wp = sp.work;
  {
    const NormEstimate est = estimate_norm(*wp.K, 200, 1e-9);
    if (est.value > 0.0 && !(params.step_size < 2.0 / (est.value * est.value)))
      throw std::invalid_argument("ista_run: step size exceeds 2/||K||^2");
  }

  IstaResult result;
  result.psi_trace.reserve(static_cast<std::size_t>(params.max_iters));
  Vector u = u0;
  const double s = params.step_size;
  for (int k = 0; k < params.max_iters; ++k) {
    const Vector next = soft_threshold(u - s * wp.K->apply_adjoint(wp.K->apply(u) - wp.g),
                                       s * wp.alpha);
    if (!next.allFinite()) throw SolverError("ista_run: iterate became non-finite");
    const double dist = (next - u).norm();
    u = next;
    result.psi_trace.push_back(objective(p, u));
    result.step_norms.push_back(dist);
    if (params.tol > 0.0 && dist <= params.tol) {
      result.reached_tol = true;
      break;
    }
  }
  result.solution = std::move(u);
  return result;
}

}  // namespace proxpoint
