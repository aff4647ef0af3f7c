#include "proxpoint/problems.hpp"

#include <cmath>

#include "proxpoint/random.hpp"

namespace proxpoint {

FresnelKernel fresnel_kernel(const HologramSpec& spec) {
  if (spec.image_size < 2) throw std::invalid_argument("fresnel_kernel: image_size must be >= 2");
  if (!(spec.wavelength > 0.0) || !(spec.distance > 0.0) || !(spec.pixel_pitch > 0.0))
    throw std::invalid_argument("fresnel_kernel: physical parameters must be positive");
  const Index n = spec.image_size;
  const Index center = n / 2;
  const double lz = spec.wavelength * spec.distance;
  Matrix k(n, n);
  for (Index r = 0; r < n; ++r) {
    const double y = static_cast<double>(r - center) * spec.pixel_pitch;
    for (Index c = 0; c < n; ++c) {
      const double x = static_cast<double>(c - center) * spec.pixel_pitch;
      k(r, c) = std::sin(M_PI * (x * x + y * y) / lz) / lz;
    }
  }
  FresnelKernel out;
  out.raw_scale = k.norm();
  out.samples = out.raw_scale > 0.0 ? Matrix(k / out.raw_scale) : k;
  return out;
}

std::pair<Problem, Vector> make_deconvolution_problem(const DeconvSpec& spec, std::uint64_t seed) {
  if (spec.n_coeffs < 1 || spec.grid_size < spec.n_coeffs)
    throw std::invalid_argument("DeconvSpec: need grid_size >= n_coeffs >= 1");
  if (spec.grid_size % spec.n_coeffs != 0)
    throw std::invalid_argument("DeconvSpec: grid_size must be divisible by n_coeffs");
  if (!(spec.kernel_width_param > 0.0))
    throw std::invalid_argument("DeconvSpec: kernel width must be positive");

  const Index n = spec.grid_size;
  Vector kernel(n);
  for (Index i = 0; i < n; ++i) {
    // signed sample coordinate of the circular grid
    const double x = static_cast<double>(i <= n / 2 ? i : i - n);
    kernel[i] = 1.0 / (1.0 + x * x / (spec.kernel_width_param * spec.kernel_width_param));
  }
  OperatorPtr blur = make_circular_conv_1d(std::move(kernel));
  OperatorPtr synthesis = make_hat_synthesis(spec.n_coeffs, spec.grid_size);
  OperatorPtr k = make_composition(std::move(blur), std::move(synthesis));

  Vector truth = Vector::Zero(spec.n_coeffs);
  for (const auto& [index, amplitude] : spec.spikes) {
    if (index < 0 || index >= spec.n_coeffs)
      throw std::invalid_argument("DeconvSpec: spike index out of range");
    truth[index] += amplitude;
  }

  Vector g = k->apply(truth);
  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    for (Index i = 0; i < g.size(); ++i) g[i] += spec.noise_sigma * gaussian(rng);
  }
  return {Problem(std::move(k), std::move(g), spec.alpha), std::move(truth)};
}

std::pair<Problem, Vector> make_hologram_problem(const HologramSpec& spec, std::uint64_t seed) {
  const Index n = spec.image_size;
  const FresnelKernel fk = fresnel_kernel(spec);

  // Embed the centered kernel into the work grid (one kernel radius of
  // padding on each side) with its origin rolled to pixel (0,0).
  const Index margin = n / 2;
  const Index work = n + 2 * margin;
  const Index center = n / 2;
  Matrix work_kernel = Matrix::Zero(work, work);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const Index wr = ((r - center) % work + work) % work;
      const Index wc = ((c - center) % work + work) % work;
      work_kernel(wr, wc) = fk.samples(r, c);
    }
  }
  OperatorPtr k = make_circular_conv_2d(std::move(work_kernel), margin);

  Vector truth = Vector::Zero(n * n);
  for (const auto& [x, y, amplitude] : spec.particles) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw std::invalid_argument("HologramSpec: particle outside the image");
    truth[y * n + x] += amplitude;
  }

  Vector g = k->apply(truth);
  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    for (Index i = 0; i < g.size(); ++i) g[i] += spec.noise_sigma * gaussian(rng);
  }
  return {Problem(std::move(k), std::move(g), spec.alpha), std::move(truth)};
}

std::pair<Problem, Vector> make_random_fbi_problem(Index m, Index n, Index sparsity, double alpha,
                                                   std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("make_random_fbi_problem: dimensions >= 1");
  if (sparsity < 0 || sparsity > n)
    throw std::invalid_argument("make_random_fbi_problem: invalid sparsity");
  std::mt19937_64 rng(seed);
  Matrix k(m, n);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < n; ++c) k(r, c) = gaussian(rng);

  {
    DenseOperator probe{Matrix(k)};
    const NormEstimate est = estimate_norm(probe, 1000, 1e-12);
    if (est.value > 0.0) k /= 1.01 * est.value;
  }

  Vector truth = Vector::Zero(n);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < sparsity; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        uniform_index(rng, static_cast<std::size_t>(n - i));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
    const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    truth[perm[static_cast<std::size_t>(i)]] = sign * uniform(rng, 0.5, 1.5);
  }

  OperatorPtr op = make_dense(std::move(k));
  Vector g = op->apply(truth);
  return {Problem(std::move(op), std::move(g), alpha), std::move(truth)};
}

std::vector<std::tuple<Index, Index, double>> random_particles(Index image_size, int count,
                                                               Index min_separation,
                                                               std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("random_particles: count must be >= 0");
  const Index border = 4;
  if (image_size <= 2 * border)
    throw std::invalid_argument("random_particles: image too small");
  std::mt19937_64 rng(seed);
  std::vector<std::tuple<Index, Index, double>> out;
  int attempts = 0;
  const int max_attempts = 100000;
  while (static_cast<int>(out.size()) < count && attempts < max_attempts) {
    ++attempts;
    const Index span = image_size - 2 * border;
    const Index x = border + static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(span)));
    const Index y = border + static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(span)));
    bool ok = true;
    for (const auto& [px, py, pa] : out) {
      if (std::max(std::abs(px - x), std::abs(py - y)) < min_separation) {
        ok = false;
        break;
      }
    }
    if (ok) out.emplace_back(x, y, 1.0);
  }
  if (static_cast<int>(out.size()) < count)
    throw std::runtime_error("random_particles: could not place the requested count");
  return out;
}

}  // namespace proxpoint
