#pragma once

#include <utility>

#include "proxpoint/operators.hpp"

namespace proxpoint {

/// One instance of the l1-regularized least-squares objective
///   Psi(u) = 1/2 ||K u - g||^2 + alpha ||u||_1.
struct Problem {
  OperatorPtr K;
  Vector g;
  double alpha = 1.0;

  Problem() = default;
  Problem(OperatorPtr op, Vector data, double weight);

  Index domain_dim() const { return K->domain_dim(); }
  Index range_dim() const { return K->range_dim(); }
};

/// Psi(u) in the units of the given problem.
double objective(const Problem& p, const Vector& u);

/// Psi(u) + (mu/2) ||u - anchor||^2.
double regularized_objective(const Problem& p, const Vector& u, double mu, const Vector& anchor);

/// A problem together with the rescaling that makes the operator norm <= 1.
///
/// The iterative solvers require ||K|| <= 1; when the estimate exceeds 1 they
/// work on (K/c, g/c, alpha/c^2) with c = 1.01 * estimated norm.  Minimizers
/// are unchanged by this joint rescaling and objective values scale by 1/c^2,
/// so results are reported against the original problem.
struct ScaledProblem {
  Problem work;        // the problem the solver iterates on
  double scale = 1.0;  // c; 1 when no rescaling was needed
  bool rescaled = false;
};

ScaledProblem ensure_unit_norm(const Problem& p);

}  // namespace proxpoint
