#include "proxpoint/ppp.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace proxpoint {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_outer: return "max_outer";
    case RunStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

double MuSchedule::value(double fallback_mu0, int n) const {
  const double base = mu0 > 0.0 ? mu0 : fallback_mu0;
  return std::max(floor, base * std::pow(decay, n));
}

void PppParams::validate() const {
  inner.validate();
  if (max_outer_iters < 1) throw std::invalid_argument("PppParams: max_outer_iters must be >= 1");
  if (v_tol && !(*v_tol >= 0.0)) throw std::invalid_argument("PppParams: v_tol must be >= 0");
  if (!(y_tol >= 0.0)) throw std::invalid_argument("PppParams: y_tol must be >= 0");
  if (total_iter_budget && *total_iter_budget < 1)
    throw std::invalid_argument("PppParams: total_iter_budget must be >= 1");
  if (!(mu_schedule.decay > 0.0 && mu_schedule.decay <= 1.0))
    throw std::invalid_argument("PppParams: mu decay must lie in (0, 1]");
}

Vector project_hyperplane(const Vector& u, const Vector& y, const Vector& v) {
  if (u.size() != y.size()) throw DimensionError("project_hyperplane y", u.size(), y.size());
  if (u.size() != v.size()) throw DimensionError("project_hyperplane v", u.size(), v.size());
  const double vv = v.squaredNorm();
  if (vv == 0.0) throw std::invalid_argument("project_hyperplane: zero normal vector");
  return u - (v.dot(u - y) / vv) * v;
}

RunResult run_ppp(const Problem& p, const Vector& u0, const PppParams& params) {
  params.validate();
  if (u0.size() != p.domain_dim()) throw DimensionError("run_ppp u0", p.domain_dim(), u0.size());
  if (!u0.allFinite()) throw std::invalid_argument("run_ppp: non-finite start");

  const ScaledProblem sp = ensure_unit_norm(p);
  const Problem& wp = sp.work;
  const double dual_scale = 1.0 + wp.K->apply_adjoint(wp.g).norm();
  const double v_tol = params.v_tol ? *params.v_tol : 1e-9 * dual_scale;
  // A subproblem that froze to machine precision with a residual this small
  // is solved as far as double precision carries; sqrt(eps) matches the
  // cancellation floor of the inner updates.
  const double stall_tol =
      std::max(v_tol, std::sqrt(std::numeric_limits<double>::epsilon()) * dual_scale);

  RunResult out;
  out.solution = u0;
  SolverTrace& trace = out.trace;
  trace.status = RunStatus::max_outer;
  if (params.record_iterates) trace.iterates.push_back(u0);

  Vector u = u0;
  for (int n = 0; n < params.max_outer_iters; ++n) {
    long remaining = std::numeric_limits<long>::max();
    if (params.total_iter_budget) {
      remaining = *params.total_iter_budget - trace.inner_total;
      if (remaining <= 0) {
        trace.status = RunStatus::budget_exhausted;
        break;
      }
    }

    InnerParams ip = params.inner;
    ip.mu = params.mu_schedule.value(params.inner.mu, n);
    ip.max_inner_iters =
        static_cast<int>(std::min<long>(params.inner.max_inner_iters, remaining));

    const SubproblemResult res = solve_subproblem(wp, u, ip, u);
    trace.inner_total += res.inner_iters;
    if (params.observer) params.observer(wp, u, ip.mu, res);

    const bool budget_hit =
        params.total_iter_budget && trace.inner_total >= *params.total_iter_budget;

    TraceRow row;
    row.n = n;
    row.inner_iters = res.inner_iters;
    row.norm_v = res.cert.norm_v;
    row.norm_eps = res.cert.norm_eps;
    row.mu = ip.mu;

    const bool at_numerical_floor =
        res.terminated_by == InnerTermination::stagnated && res.cert.norm_v <= stall_tol;
    if (res.cert.norm_v <= v_tol || (res.y - u).norm() <= params.y_tol || at_numerical_floor) {
      u = res.y;
      row.psi = objective(p, u);
      trace.rows.push_back(row);
      if (params.record_iterates) trace.iterates.push_back(u);
      trace.status = RunStatus::converged;
      out.solution = u;
      return out;
    }

    if (res.terminated_by == InnerTermination::stagnated)
      throw SolverError("run_ppp: inner solver stagnated at outer iteration " + std::to_string(n) +
                        " with ||v|| = " + std::to_string(res.cert.norm_v) +
                        " above the acceptable floor " + std::to_string(stall_tol));
    if (res.terminated_by == InnerTermination::max_iters && !budget_hit)
      throw SolverError("run_ppp: inner solver failed the accuracy test within max_inner_iters (" +
                        std::to_string(params.inner.max_inner_iters) + ") at outer iteration " +
                        std::to_string(n));

    // norm_v > v_tol >= 0 here, so the hyperplane normal is nonzero.  A
    // budget-cut inner solve still projects with its last certificate, which
    // reproduces the convention that the final table row of a budgeted run
    // may come from a non-terminated inner loop.
    u = project_hyperplane(u, res.y, res.cert.v);
    if (!u.allFinite()) throw SolverError("run_ppp: projected iterate became non-finite");
    row.psi = objective(p, u);
    if (!std::isfinite(row.psi)) throw SolverError("run_ppp: objective became non-finite");
    trace.rows.push_back(row);
    if (params.record_iterates) trace.iterates.push_back(u);

    if (budget_hit) {
      trace.status = RunStatus::budget_exhausted;
      break;
    }
  }

  out.solution = u;
  return out;
}

namespace {

// next k-combination of {0,...,n-1} in lexicographic order; false when done
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - k + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Vector oracle_solve(const Problem& p, int max_support) {
  if (max_support < 0) throw std::invalid_argument("oracle_solve: max_support must be >= 0");
  const Index n = p.domain_dim();
  const double dual_tol = 1e-10;

  // columns of K, gram matrix and correlation with the data
  Matrix cols(p.range_dim(), n);
  Vector e = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    cols.col(j) = p.K->apply(e);
    e[j] = 0.0;
  }
  const Matrix gram = cols.transpose() * cols;
  const Vector corr = cols.transpose() * p.g;  // K* g

  // empty support: 0 is optimal iff ||K* g||_inf <= alpha
  if (corr.cwiseAbs().maxCoeff() <= p.alpha + dual_tol) return Vector::Zero(n);

  for (int k = 1; k <= std::min<int>(max_support, static_cast<int>(n)); ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
      Matrix gram_ii(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          gram_ii(a, b) = gram(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
      Eigen::LDLT<Matrix> ldlt(gram_ii);
      if (ldlt.info() != Eigen::Success) continue;

      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Vector signs(k);
        for (int i = 0; i < k; ++i) signs[i] = (mask >> i) & 1u ? 1.0 : -1.0;
        Vector rhs(k);
        for (int i = 0; i < k; ++i)
          rhs[i] = corr[idx[static_cast<std::size_t>(i)]] - p.alpha * signs[i];
        const Vector u_i = ldlt.solve(rhs);
        bool sign_ok = true;
        for (int i = 0; i < k && sign_ok; ++i) sign_ok = u_i[i] * signs[i] > 0.0;
        if (!sign_ok) continue;

        Vector u = Vector::Zero(n);
        for (int i = 0; i < k; ++i) u[idx[static_cast<std::size_t>(i)]] = u_i[i];
        const Vector dual = gram * u - corr;  // K*(K u - g)
        bool dual_ok = true;
        for (Index j = 0; j < n && dual_ok; ++j) {
          bool on_support = false;
          for (int i = 0; i < k; ++i)
            if (idx[static_cast<std::size_t>(i)] == j) on_support = true;
          if (!on_support) dual_ok = std::abs(dual[j]) <= p.alpha + dual_tol;
        }
        if (dual_ok) return u;
      }
    } while (next_combination(idx, static_cast<int>(n)));
  }
  throw SolverError("oracle_solve: no support pattern of size <= " + std::to_string(max_support) +
                    " verified the optimality conditions; raise max_support");
}

}  // namespace proxpoint
