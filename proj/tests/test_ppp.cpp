#include <doctest.h>

#include "proxpoint/ista.hpp"
#include "proxpoint/ppp.hpp"
#include "proxpoint/problems.hpp"
#include "support/test_utils.hpp"

using namespace proxpoint;
using testsupport::random_matrix;
using testsupport::random_vector;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

PppParams default_params(InnerMethod method = InnerMethod::damped_ista) {
  PppParams params;
  params.inner.method = method;
  params.inner.sigma = 0.9;
  params.inner.mu = 0.05;
  params.max_outer_iters = 20000;
  return params;
}

}  // namespace

TEST_CASE("hyperplane projection") {
  SUBCASE("points on the plane stay put") {
    const Vector u = vec({2.0, 3.0});
    const Vector y = vec({2.0, 0.0});
    const Vector v = vec({1.0, 0.0});  // <v, u - y> = 0
    CHECK(project_hyperplane(u, y, v).isApprox(u));
  }

  SUBCASE("frozen arithmetic") {
    CHECK(project_hyperplane(vec({1.0, 0.0}), vec({0.0, 0.0}), vec({1.0, 0.0}))
              .isApprox(vec({0.0, 0.0})));
  }

  SUBCASE("lands on the plane and is the closest plane point") {
    std::mt19937_64 rng(61);
    const Index n = 6;
    const Vector u = random_vector(rng, n);
    const Vector y = random_vector(rng, n);
    Vector v = random_vector(rng, n);
    const Vector x = project_hyperplane(u, y, v);
    CHECK(std::abs(v.dot(x - y)) <= 1e-12 * (1.0 + v.norm() * (x - y).norm()));
    for (int t = 0; t < 100; ++t) {
      Vector z = random_vector(rng, n);
      z -= (v.dot(z - y) / v.squaredNorm()) * v;  // random point on the plane
      CHECK((u - x).norm() <= (u - z).norm() + 1e-12);
    }
  }

  SUBCASE("zero normal is rejected") {
    CHECK_THROWS_AS((void)project_hyperplane(vec({1.0}), vec({0.0}), vec({0.0})),
                    std::invalid_argument);
  }
}

TEST_CASE("run_ppp on trivial data") {
  SUBCASE("zero data converges immediately to zero") {
    const Problem p(make_identity(4), Vector::Zero(4), 1.0);
    const RunResult res = run_ppp(p, Vector::Zero(4), default_params());
    CHECK(res.trace.status == RunStatus::converged);
    CHECK(res.solution.norm() == 0.0);
    REQUIRE(res.trace.rows.size() == 1);
    CHECK(res.trace.rows[0].n == 0);
    CHECK(res.trace.rows[0].psi == 0.0);
  }

  SUBCASE("scalar shrinkage solution") {
    const Problem p(make_identity(1), vec({2.0}), 0.5);
    const RunResult res = run_ppp(p, vec({0.0}), default_params());
    CHECK(res.trace.status == RunStatus::converged);
    CHECK(res.solution[0] == doctest::Approx(1.5).epsilon(1e-6));
  }
}

TEST_CASE("oracle_solve") {
  SUBCASE("identity operator reduces to shrinkage") {
    std::mt19937_64 rng(67);
    const Vector g = random_vector(rng, 6, -2.0, 2.0);
    const Problem p(make_identity(6), g, 0.8);
    const Vector expected = soft_threshold(g, 0.8);
    CHECK((oracle_solve(p, 6) - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  SUBCASE("zero data has the empty support") {
    const Problem p(make_identity(5), Vector::Zero(5), 0.2);
    CHECK(oracle_solve(p, 2).norm() == 0.0);
  }

  SUBCASE("agrees with a long ista run on a random 5x8 instance") {
    auto [p, truth] = make_random_fbi_problem(5, 8, 2, 0.06, 4242);
    IstaParams params;
    params.max_iters = 1000000;
    params.tol = 1e-16;
    const IstaResult ista = ista_run(p, Vector::Zero(8), params);
    const Vector oracle = oracle_solve(p, 4);
    CHECK((oracle - ista.solution).norm() <= 1e-10);
  }

  SUBCASE("impossible support budget raises") {
    auto [p, truth] = make_random_fbi_problem(6, 9, 3, 1e-5, 77);
    CHECK_THROWS_AS((void)oracle_solve(p, 0), SolverError);
  }
}

TEST_CASE("run_ppp matches the support-enumeration oracle") {
  auto [p, truth] = make_random_fbi_problem(8, 12, 3, 1.0, 31);
  // alpha tied to the data scale keeps the minimizer sparse
  const double alpha = 0.2 * p.K->apply_adjoint(p.g).lpNorm<Eigen::Infinity>();
  const Problem problem(p.K, p.g, alpha);
  const Vector ustar = oracle_solve(problem, 4);

  for (InnerMethod method : {InnerMethod::damped_ista, InnerMethod::gcg}) {
    CAPTURE(to_string(method));
    PppParams params = default_params(method);
    params.v_tol = 1e-10;  // drive the run further than the scale-aware default
    const RunResult res = run_ppp(problem, Vector::Zero(12), params);
    CHECK(res.trace.status == RunStatus::converged);
    // gcg bottoms out near sqrt(machine eps) because its step-size numerator
    // cancels; the thresholding solver certifies further
    const double tol = method == InnerMethod::damped_ista ? 1e-8 : 1e-7;
    CHECK((res.solution - ustar).norm() <= tol);
  }
}

TEST_CASE("fejer monotonicity and separation along the run") {
  auto [p0, truth] = make_random_fbi_problem(8, 12, 3, 1.0, 97);
  const double alpha = 0.25 * p0.K->apply_adjoint(p0.g).lpNorm<Eigen::Infinity>();
  const Problem p(p0.K, p0.g, alpha);
  const Vector ustar = oracle_solve(p, 4);

  PppParams params = default_params();
  params.record_iterates = true;
  std::vector<double> separations;
  params.observer = [&](const Problem&, const Vector& anchor, double,
                        const SubproblemResult& res) {
    separations.push_back(res.cert.v.dot(anchor - res.y));
  };
  const RunResult res = run_ppp(p, Vector::Zero(12), params);
  REQUIRE(res.trace.status == RunStatus::converged);

  for (std::size_t i = 0; i + 1 < res.trace.iterates.size(); ++i) {
    const double before = (res.trace.iterates[i] - ustar).norm();
    const double after = (res.trace.iterates[i + 1] - ustar).norm();
    CHECK(after <= before + 1e-12);
  }
  // all solves before the terminal one must strictly separate
  REQUIRE(!separations.empty());
  for (std::size_t i = 0; i + 1 < separations.size(); ++i) CHECK(separations[i] > 0.0);
}

TEST_CASE("q-linear tail on a gaussian instance") {
  auto [p0, truth] = make_random_fbi_problem(10, 20, 3, 1.0, 1234);
  const double alpha = 0.2 * p0.K->apply_adjoint(p0.g).lpNorm<Eigen::Infinity>();
  const Problem p(p0.K, p0.g, alpha);
  const Vector ustar = oracle_solve(p, 5);

  PppParams params = default_params();
  params.record_iterates = true;
  params.v_tol = 0.0;  // run the tail down to max_outer
  params.max_outer_iters = 60;
  const RunResult res = run_ppp(p, Vector::Zero(20), params);

  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < res.trace.iterates.size(); ++i) {
    const double before = (res.trace.iterates[i] - ustar).norm();
    const double after = (res.trace.iterates[i + 1] - ustar).norm();
    if (before > 1e-12) ratios.push_back(after / before);
  }
  REQUIRE(ratios.size() >= 10);
  for (std::size_t i = ratios.size() - 5; i < ratios.size(); ++i) CHECK(ratios[i] < 1.0);
}

TEST_CASE("budget accounting cuts the run") {
  auto [p, truth] = make_random_fbi_problem(8, 12, 3, 0.04, 555);
  PppParams params = default_params();
  params.inner.sigma = 0.1;  // force multi-iteration inner solves
  params.total_iter_budget = 25;
  const RunResult res = run_ppp(p, Vector::Zero(12), params);
  CHECK(res.trace.status == RunStatus::budget_exhausted);
  CHECK(res.trace.inner_total <= 25);
  CHECK(!res.trace.rows.empty());
}

TEST_CASE("inner stall aborts the run") {
  auto [p, truth] = make_random_fbi_problem(6, 9, 3, 0.05, 777);
  PppParams params = default_params();
  params.inner.sigma = 0.0;  // unreachable exactness
  params.inner.max_inner_iters = 4;
  CHECK_THROWS_AS((void)run_ppp(p, Vector::Zero(9), params), SolverError);
}

TEST_CASE("rescaling leaves minimizers and objectives consistent") {
  std::mt19937_64 rng(83);
  // spectral norm well above 1 exercises the internal rescaling; data built
  // from a sparse truth keeps the minimizer within the oracle's support range
  const Matrix m = 3.0 * random_matrix(rng, 6, 9);
  Vector truth = Vector::Zero(9);
  truth[2] = 1.0;
  truth[7] = -0.8;
  const Vector g = m * truth;
  const double alpha = 0.25 * (m.transpose() * g).lpNorm<Eigen::Infinity>();
  const Problem p(make_dense(m), g, alpha);

  const ScaledProblem sp = ensure_unit_norm(p);
  REQUIRE(sp.rescaled);
  CHECK(estimate_norm(*sp.work.K).value <= 1.0);

  // objective scales by exactly 1/c^2
  for (int t = 0; t < 10; ++t) {
    const Vector u = random_vector(rng, 9);
    const double original = objective(p, u);
    const double scaled = objective(sp.work, u);
    CHECK(scaled == doctest::Approx(original / (sp.scale * sp.scale)).epsilon(1e-12));
  }

  // identical minimizer through the oracle on both formulations
  const Vector u_orig = oracle_solve(p, 4);
  const Vector u_scaled = oracle_solve(sp.work, 4);
  CHECK((u_orig - u_scaled).norm() <= 1e-8);

  // and the full solver handles the un-rescaled problem directly
  const RunResult res = run_ppp(p, Vector::Zero(9), default_params());
  CHECK(res.trace.status == RunStatus::converged);
  CHECK((res.solution - u_orig).norm() <= 1e-7);
}

TEST_CASE("mu schedule decays when configured") {
  auto [p, truth] = make_random_fbi_problem(6, 9, 2, 0.05, 999);
  PppParams params = default_params();
  params.mu_schedule.mu0 = 0.4;
  params.mu_schedule.decay = 0.5;
  params.mu_schedule.floor = 0.05;
  params.max_outer_iters = 6;
  params.v_tol = 0.0;
  const RunResult res = run_ppp(p, Vector::Zero(9), params);
  REQUIRE(res.trace.rows.size() >= 4);
  CHECK(res.trace.rows[0].mu == doctest::Approx(0.4));
  CHECK(res.trace.rows[1].mu == doctest::Approx(0.2));
  CHECK(res.trace.rows[3].mu == doctest::Approx(0.05));  // clamped at the floor
}
