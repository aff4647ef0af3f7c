#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "proxpoint/inner_solvers.hpp"

namespace proxpoint {

enum class RunStatus { converged, max_outer, budget_exhausted };

std::string to_string(RunStatus s);

struct TraceRow {
  int n = 0;            // outer iteration index (0-based)
  int inner_iters = 0;  // inner iterations spent in this outer step
  double psi = 0.0;     // objective at the new iterate, in original units
  double norm_v = 0.0;
  double norm_eps = 0.0;
  double mu = 0.0;
};

struct SolverTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::max_outer;
  long inner_total = 0;
  std::vector<Vector> iterates;  // u^0, u^1, ... when record_iterates is set
};

/// mu_n = max(floor, mu0 * decay^n); mu0 <= 0 means "use InnerParams::mu".
struct MuSchedule {
  double mu0 = -1.0;
  double decay = 1.0;
  double floor = 0.0;

  double value(double fallback_mu0, int n) const;
};

/// Called after every inner solve with the internally iterated problem (the
/// rescaled one when rescaling was needed), the anchor u^n, mu_n and the
/// subproblem result.  Used by post-hoc certificate verification.
using SubproblemObserver =
    std::function<void(const Problem&, const Vector&, double, const SubproblemResult&)>;

struct PppParams {
  InnerParams inner;
  MuSchedule mu_schedule;
  int max_outer_iters = 1000;
  std::optional<double> v_tol;  // nullopt: 1e-9 * (1 + ||K* g||) of the iterated problem
  double y_tol = 1e-12;
  std::optional<long> total_iter_budget;  // cap on cumulative inner iterations
  bool record_iterates = false;
  SubproblemObserver observer;

  void validate() const;
};

struct RunResult {
  Vector solution;
  SolverTrace trace;
};

/// Orthogonal projection of u onto the hyperplane {x : <v, x - y> = 0}.
/// Throws if v = 0.
Vector project_hyperplane(const Vector& u, const Vector& y, const Vector& v);

/// Projection proximal-point loop: solve the mu_n-regularized subproblem from
/// warm start u^n to sigma-accuracy, stop when ||v|| <= v_tol or
/// ||y - u^n|| <= y_tol, otherwise project u^n onto the separating hyperplane
/// through y^n.  Operates on the internally rescaled problem when
/// ||K|| > 1; the trace reports objective values of the original problem.
///
/// Throws SolverError if an inner solve stalls at max_inner_iters with the
/// sigma-test still failing (a budget cut is reported as budget_exhausted
/// instead), or if iterates become non-finite.
RunResult run_ppp(const Problem& p, const Vector& u0, const PppParams& params);

/// Global minimizer by support/sign enumeration: for every support up to
/// max_support and every sign pattern, solves the reduced stationarity system
/// and accepts iff the signs match and all off-support duals lie within
/// [-alpha, alpha] (tolerance 1e-10).  Feasible for small dimensions only.
Vector oracle_solve(const Problem& p, int max_support);

}  // namespace proxpoint
