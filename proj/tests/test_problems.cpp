#include <doctest.h>

#include <Eigen/SVD>

#include "proxpoint/ppp.hpp"
#include "proxpoint/problems.hpp"
#include "support/test_utils.hpp"

using namespace proxpoint;
using testsupport::adjoint_defect;
using testsupport::random_vector;

TEST_CASE("fresnel kernel formula") {
  HologramSpec spec;
  spec.image_size = 32;
  spec.wavelength = 630e-9;
  spec.distance = 0.25;

  SUBCASE("zero at the origin") {
    spec.pixel_pitch = 10e-6;
    const FresnelKernel fk = fresnel_kernel(spec);
    CHECK(fk.samples(16, 16) == 0.0);
  }

  SUBCASE("quarter-period pixel reaches the raw chirp amplitude") {
    // pitch chosen so pixel (row center, col 0) sits at r^2 = lambda z / 2,
    // where the raw chirp equals sin(pi/2)/(lambda z)
    const double lz = spec.wavelength * spec.distance;
    spec.pixel_pitch = std::sqrt(lz / 2.0) / 16.0;
    const FresnelKernel fk = fresnel_kernel(spec);
    const double raw = fk.samples(16, 0) * fk.raw_scale;
    CHECK(raw == doctest::Approx(1.0 / lz).epsilon(1e-12));
  }

  SUBCASE("radial symmetry on the sampled grid") {
    spec.pixel_pitch = 10e-6;
    const FresnelKernel fk = fresnel_kernel(spec);
    const Index c = 16;
    for (Index dx = 1; dx < 15; dx += 3) {
      for (Index dy = 1; dy < 15; dy += 4) {
        CHECK(fk.samples(c + dy, c + dx) == fk.samples(c + dx, c + dy));
        CHECK(fk.samples(c + dy, c - dx) == fk.samples(c + dy, c + dx));
        CHECK(fk.samples(c - dy, c + dx) == fk.samples(c + dy, c + dx));
      }
    }
  }

  SUBCASE("unit l2 norm after normalization") {
    spec.pixel_pitch = 10e-6;
    const FresnelKernel fk = fresnel_kernel(spec);
    CHECK(std::abs(fk.samples.norm() - 1.0) <= 1e-14);
  }
}

TEST_CASE("deconvolution problem generator") {
  SUBCASE("kernel samples on the signed grid") {
    DeconvSpec spec;
    spec.grid_size = 64;
    spec.n_coeffs = 8;
    spec.kernel_width_param = 5.0;
    spec.spikes = {{3, 1.0}};
    auto [p, truth] = make_deconvolution_problem(spec, 1);
    const auto& comp = dynamic_cast<const CompositionOperator&>(*p.K);
    const auto& blur = dynamic_cast<const CircularConv1D&>(*comp.outer());
    CHECK(blur.kernel()[0] == doctest::Approx(1.0));
    CHECK(blur.kernel()[5] == doctest::Approx(0.5));
    CHECK(blur.kernel()[64 - 5] == doctest::Approx(0.5));  // signed sampling wraps
    CHECK(comp.inner()->kind() == OperatorKind::hat_synthesis);
  }

  SUBCASE("no spikes means zero data") {
    DeconvSpec spec;
    spec.spikes.clear();
    auto [p, truth] = make_deconvolution_problem(spec, 1);
    CHECK(p.g.norm() == 0.0);
    CHECK(truth.norm() == 0.0);
  }

  SUBCASE("noiseless objective at the truth is exactly the l1 term") {
    DeconvSpec spec;
    auto [p, truth] = make_deconvolution_problem(spec, 3);
    CHECK(objective(p, truth) == spec.alpha * truth.lpNorm<1>());
  }

  SUBCASE("noise is seeded and reproducible") {
    DeconvSpec spec;
    spec.noise_sigma = 0.1;
    auto [p1, t1] = make_deconvolution_problem(spec, 9);
    auto [p2, t2] = make_deconvolution_problem(spec, 9);
    CHECK((p1.g - p2.g).norm() == 0.0);
    auto [p3, t3] = make_deconvolution_problem(spec, 10);
    CHECK((p1.g - p3.g).norm() > 0.0);
  }

  SUBCASE("single spike is recovered at the right coefficient") {
    DeconvSpec spec;
    spec.grid_size = 64;
    spec.n_coeffs = 8;
    spec.spikes = {{3, 1.0}};
    spec.alpha = 1e-3;
    auto [p, truth] = make_deconvolution_problem(spec, 5);
    PppParams params;
    params.inner.method = InnerMethod::gcg;
    params.inner.sigma = 0.9;
    params.inner.mu = 0.05;
    params.max_outer_iters = 5000;
    const RunResult res = run_ppp(p, Vector::Zero(8), params);
    Index argmax = 0;
    res.solution.cwiseAbs().maxCoeff(&argmax);
    CHECK(argmax == 3);
  }

  SUBCASE("generated operator passes the adjoint test") {
    DeconvSpec spec;
    auto [p, truth] = make_deconvolution_problem(spec, 2);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
      const Vector u = random_vector(rng, p.domain_dim());
      const Vector v = random_vector(rng, p.range_dim());
      CHECK(std::abs(adjoint_defect(*p.K, u, v)) <= 1e-10 * (1.0 + u.norm() * v.norm()));
    }
  }
}

TEST_CASE("hologram problem generator") {
  HologramSpec spec;
  spec.image_size = 32;

  SUBCASE("no particles means zero data") {
    auto [p, truth] = make_hologram_problem(spec, 1);
    CHECK(p.g.norm() == 0.0);
  }

  SUBCASE("a centered particle reproduces the centered kernel") {
    spec.particles = {{16, 16, 2.5}};
    auto [p, truth] = make_hologram_problem(spec, 1);
    const FresnelKernel fk = fresnel_kernel(spec);
    Vector expected(32 * 32);
    for (Index r = 0; r < 32; ++r)
      for (Index c = 0; c < 32; ++c) expected[r * 32 + c] = 2.5 * fk.samples(r, c);
    CHECK((p.g - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  SUBCASE("work grid suppresses wrap-around") {
    // a corner particle must not leak a wrapped chirp to the opposite corner
    spec.particles = {{1, 1, 1.0}};
    auto [p, truth] = make_hologram_problem(spec, 1);
    const FresnelKernel fk = fresnel_kernel(spec);
    // direct linear (non-circular) convolution restricted to the window
    Vector expected = Vector::Zero(32 * 32);
    for (Index r = 0; r < 32; ++r) {
      for (Index c = 0; c < 32; ++c) {
        const Index dr = r - 1 + 16;  // kernel row offset from its center
        const Index dc = c - 1 + 16;
        if (dr >= 0 && dr < 32 && dc >= 0 && dc < 32) expected[r * 32 + c] = fk.samples(dr, dc);
      }
    }
    CHECK((p.g - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  SUBCASE("particles outside the image are rejected") {
    spec.particles = {{40, 2, 1.0}};
    CHECK_THROWS_AS((void)make_hologram_problem(spec, 1), std::invalid_argument);
  }

  SUBCASE("generated operator passes the adjoint test") {
    spec.image_size = 8;
    auto [p, truth] = make_hologram_problem(spec, 1);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
      const Vector u = random_vector(rng, p.domain_dim());
      const Vector v = random_vector(rng, p.range_dim());
      CHECK(std::abs(adjoint_defect(*p.K, u, v)) <= 1e-10 * (1.0 + u.norm() * v.norm()));
    }
  }
}

TEST_CASE("random fbi problem generator") {
  SUBCASE("zero sparsity gives zero truth and data") {
    auto [p, truth] = make_random_fbi_problem(6, 8, 0, 0.1, 1);
    CHECK(truth.norm() == 0.0);
    CHECK(p.g.norm() == 0.0);
  }

  SUBCASE("seeded calls are bit-reproducible") {
    auto [p1, t1] = make_random_fbi_problem(6, 8, 3, 0.1, 42);
    auto [p2, t2] = make_random_fbi_problem(6, 8, 3, 0.1, 42);
    const auto& m1 = dynamic_cast<const DenseOperator&>(*p1.K).matrix();
    const auto& m2 = dynamic_cast<const DenseOperator&>(*p2.K).matrix();
    CHECK(m1 == m2);
    CHECK(t1 == t2);
    CHECK(p1.g == p2.g);
  }

  SUBCASE("operator norm is at most one") {
    auto [p, truth] = make_random_fbi_problem(10, 16, 4, 0.1, 7);
    CHECK(estimate_norm(*p.K).value <= 1.0);
  }

  SUBCASE("column triples have full rank (empirical FBI witness)") {
    auto [p, truth] = make_random_fbi_problem(12, 20, 4, 0.1, 11);
    const Matrix& m = dynamic_cast<const DenseOperator&>(*p.K).matrix();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
      Matrix sub(12, 3);
      std::vector<Index> picked;
      while (picked.size() < 3) {
        const Index j = static_cast<Index>(proxpoint::uniform_index(rng, 20));
        bool duplicate = false;
        for (Index q : picked) duplicate = duplicate || q == j;
        if (!duplicate) picked.push_back(j);
      }
      for (int c = 0; c < 3; ++c) sub.col(c) = m.col(picked[static_cast<std::size_t>(c)]);
      const auto svd = Eigen::JacobiSVD<Matrix>(sub);
      CHECK(svd.singularValues()[2] > 1e-8);
    }
  }
}

TEST_CASE("random particle layouts") {
  const auto particles = random_particles(64, 20, 5, 99);
  CHECK(particles.size() == 20);
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& [x, y, a] = particles[i];
    CHECK(x >= 4);
    CHECK(x < 60);
    CHECK(y >= 4);
    CHECK(y < 60);
    CHECK(a == 1.0);
    for (std::size_t j = i + 1; j < particles.size(); ++j) {
      const auto& [x2, y2, a2] = particles[j];
      CHECK(std::max(std::abs(x - x2), std::abs(y - y2)) >= 5);
    }
  }
  // seeded reproducibility
  CHECK(random_particles(64, 20, 5, 99) == particles);
}
