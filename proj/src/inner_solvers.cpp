#include "proxpoint/inner_solvers.hpp"

#include <cmath>
#include <limits>

namespace proxpoint {

std::string to_string(InnerMethod m) {
  return m == InnerMethod::damped_ista ? "damped_ista" : "gcg";
}

void InnerParams::validate() const {
  if (!(sigma >= 0.0 && sigma < 1.0))
    throw std::invalid_argument("InnerParams: sigma must lie in [0, 1)");
  if (!(mu > 0.0)) throw std::invalid_argument("InnerParams: mu must be positive");
  if (method == InnerMethod::damped_ista && !(step_size > 0.0))
    throw std::invalid_argument("InnerParams: step_size must be positive");
  if (max_inner_iters < 1) throw std::invalid_argument("InnerParams: max_inner_iters must be >= 1");
}

namespace {

double phi(const Problem& p, const Vector& u, const Vector& anchor, double mu) {
  return p.alpha * u.lpNorm<1>() + 0.5 * mu * (u - anchor).squaredNorm();
}

Vector ista_step_impl(const Problem& p, const Vector& y, const Vector& anchor, double mu,
                      double s) {
  const Vector grad = p.K->apply_adjoint(p.K->apply(y) - p.g);
  return soft_threshold(y - s * grad + (s * mu) * anchor, s * p.alpha) / (1.0 + s * mu);
}

void check_step_size(const Problem& p, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("damped_ista_step: step size must be positive");
  const NormEstimate est = estimate_norm(*p.K, 200, 1e-9);
  if (est.value > 0.0 && !(s < 2.0 / (est.value * est.value)))
    throw std::invalid_argument("damped_ista_step: step size exceeds 2/||K||^2");
}

}  // namespace

Vector damped_ista_step(const Problem& p, const Vector& y, const Vector& anchor, double mu,
                        double s) {
  if (!(mu > 0.0)) throw std::invalid_argument("damped_ista_step: mu must be positive");
  check_step_size(p, s);
  return ista_step_impl(p, y, anchor, mu, s);
}

Vector gcg_search_direction(const Problem& p, const Vector& y, const Vector& anchor, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("gcg_search_direction: mu must be positive");
  const Vector grad = p.K->apply_adjoint(p.K->apply(y) - p.g);
  return soft_threshold(mu * anchor - grad, p.alpha) / mu;
}

double gcg_step_size(const Problem& p, const Vector& y, const Vector& w, const Vector& anchor,
                     double mu) {
  const double dist2 = (y - w).squaredNorm();
  if (dist2 == 0.0) return 0.0;
  const Vector residual = p.K->apply(y) - p.g;
  const Vector kd = p.K->apply(y - w);
  const double numerator = phi(p, y, anchor, mu) - phi(p, w, anchor, mu) + residual.dot(kd);
  const double denominator = kd.squaredNorm();
  if (denominator < 1e-14 * dist2) return numerator > 0.0 ? 1.0 : 0.0;
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

bool sigma_test_passed(const Certificate& cert, const Vector& y, const Vector& anchor, double mu,
                       double sigma) {
  return cert.norm_eps <= sigma * std::max(cert.norm_v, mu * (y - anchor).norm());
}

SubproblemResult solve_subproblem(const Problem& p, const Vector& anchor,
                                  const InnerParams& params, const Vector& warm_start) {
  params.validate();
  if (anchor.size() != p.domain_dim())
    throw DimensionError("solve_subproblem anchor", p.domain_dim(), anchor.size());
  if (warm_start.size() != p.domain_dim())
    throw DimensionError("solve_subproblem warm_start", p.domain_dim(), warm_start.size());
  if (!warm_start.allFinite())
    throw std::invalid_argument("solve_subproblem: non-finite warm start");
  if (params.method == InnerMethod::damped_ista) check_step_size(p, params.step_size);

  SubproblemResult result;
  result.y = warm_start;
  int stagnant_steps = 0;
  for (int k = 1; k <= params.max_inner_iters; ++k) {
    const Vector previous = result.y;
    Vector direction;  // gcg search direction, kept as a certificate candidate
    if (params.method == InnerMethod::damped_ista) {
      result.y = ista_step_impl(p, result.y, anchor, params.mu, params.step_size);
    } else {
      direction = gcg_search_direction(p, result.y, anchor, params.mu);
      const double s = gcg_step_size(p, result.y, direction, anchor, params.mu);
      result.y += s * (direction - result.y);
    }
    if (!result.y.allFinite()) throw SolverError("solve_subproblem: iterate became non-finite");
    if ((result.y - previous).norm() <= 4.0 * std::numeric_limits<double>::epsilon() *
                                            (1.0 + previous.norm()))
      ++stagnant_steps;
    else
      stagnant_steps = 0;
    result.cert = certificate(p, result.y, anchor, params.mu);
    result.inner_iters = k;
    if (sigma_test_passed(result.cert, result.y, anchor, params.mu, params.sigma)) {
      result.terminated_by = InnerTermination::sigma_test;
      return result;
    }
    // The interpolated gcg iterate keeps stray non-zeros on coordinates the
    // minimizer zeroes out, which puts a floor under ||eps|| at y.  The
    // search direction is soft-thresholded, carries exact zeros, and tends
    // to the same minimizer, so it is tested as an alternative candidate.
    if (params.method == InnerMethod::gcg) {
      Certificate cert_w = certificate(p, direction, anchor, params.mu);
      if (sigma_test_passed(cert_w, direction, anchor, params.mu, params.sigma)) {
        result.y = std::move(direction);
        result.cert = std::move(cert_w);
        result.terminated_by = InnerTermination::sigma_test;
        return result;
      }
      // a frozen iterate cannot improve the candidate either; report the
      // better of the two certificates
      if (stagnant_steps >= 3 && cert_w.norm_v < result.cert.norm_v) {
        result.y = std::move(direction);
        result.cert = std::move(cert_w);
      }
    }
    if (stagnant_steps >= 3) {
      result.terminated_by = InnerTermination::stagnated;
      return result;
    }
  }
  result.terminated_by = InnerTermination::max_iters;
  return result;
}

}  // namespace proxpoint
