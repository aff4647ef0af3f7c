#pragma once

#include "proxpoint/prox.hpp"

namespace proxpoint {

enum class InnerMethod { damped_ista, gcg };

std::string to_string(InnerMethod m);

/// Configuration of one subproblem solve
///   min_u 1/2 ||K u - g||^2 + alpha ||u||_1 + mu/2 ||u - anchor||^2
/// to the accuracy ||eps|| <= sigma * max(||v||, mu ||y - anchor||).
struct InnerParams {
  InnerMethod method = InnerMethod::damped_ista;
  double sigma = 0.9;      // accuracy test factor, in [0, 1)
  double mu = 0.05;        // proximal weight mu_n > 0
  double step_size = 1.0;  // damped_ista only; must lie in (0, 2/||K||^2)
  int max_inner_iters = 10000;

  void validate() const;
};

// stagnated: the iteration map stopped making representable progress (the
// iterate froze to machine precision) before the sigma-test passed; the
// subproblem is solved as accurately as double precision allows.
enum class InnerTermination { sigma_test, max_iters, stagnated };

struct SubproblemResult {
  Vector y;
  Certificate cert;
  int inner_iters = 0;
  InnerTermination terminated_by = InnerTermination::sigma_test;
};

/// One damped soft-thresholding step
///   y+ = 1/(1 + s mu) S_{s alpha}(y - s K*(K y - g) + s mu anchor).
/// Throws if s is outside (0, 2/||K||^2) (norm taken from estimate_norm).
Vector damped_ista_step(const Problem& p, const Vector& y, const Vector& anchor, double mu,
                        double s);

/// Minimizer of <K*(K y - g), w> + alpha ||w||_1 + mu/2 ||w - anchor||^2,
/// i.e. w = (1/mu) S_alpha(mu anchor - K*(K y - g)).
Vector gcg_search_direction(const Problem& p, const Vector& y, const Vector& anchor, double mu);

/// Exact step size for the segment y + s (w - y), clamped to [0, 1].  A
/// vanishing ||K(y-w)||^2 with positive numerator means the objective
/// decreases linearly all the way to w, so s = 1; otherwise 0.
double gcg_step_size(const Problem& p, const Vector& y, const Vector& w, const Vector& anchor,
                     double mu);

/// Iterates the chosen inner method from warm_start, evaluating the
/// certificate after every step, until the sigma-test passes or
/// max_inner_iters is reached.  The caller decides what to do with a
/// max_iters result.
SubproblemResult solve_subproblem(const Problem& p, const Vector& anchor,
                                  const InnerParams& params, const Vector& warm_start);

/// True iff the sigma-test holds for the given certificate at y.
bool sigma_test_passed(const Certificate& cert, const Vector& y, const Vector& anchor, double mu,
                       double sigma);

}  // namespace proxpoint
