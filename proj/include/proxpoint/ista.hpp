#pragma once

#include "proxpoint/prox.hpp"

namespace proxpoint {

struct IstaParams {
  double step_size = 1.0;  // must lie in (0, 2/||K||^2) of the iterated problem
  int max_iters = 10000;
  double tol = 0.0;  // stop when ||u_{k+1} - u_k|| <= tol; 0 disables

  void validate() const;
};

struct IstaResult {
  Vector solution;
  std::vector<double> psi_trace;   // objective after each iteration, original units
  std::vector<double> step_norms;  // ||u_{k+1} - u_k|| per iteration
  bool reached_tol = false;
};

/// Plain iterated soft-thresholding u+ = S_{s alpha}(u - s K*(K u - g)),
/// the mu = 0 specialization of the damped inner step.  Rescales internally
/// when ||K|| > 1, like the projection proximal-point solver.
IstaResult ista_run(const Problem& p, const Vector& u0, const IstaParams& params);

}  // namespace proxpoint
