#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "proxpoint/problem.hpp"

namespace proxpoint {

/// 1D circular deconvolution with hat-function synthesis: K = A B where A is
/// circular convolution with the Cauchy-type kernel 1/(1 + x^2/w^2) and B the
/// hat synthesis from n_coeffs coefficients to the grid.
struct DeconvSpec {
  Index grid_size = 256;
  Index n_coeffs = 64;
  double kernel_width_param = 5.0;
  std::vector<std::pair<Index, double>> spikes = {{10, 1.0}, {22, -0.8}, {38, 0.6}, {52, 1.2}};
  double noise_sigma = 0.0;
  double alpha = 0.005;
};

/// In-line holography forward model: 2D circular convolution of a particle
/// plane with the real part of the Fresnel chirp.  Parameters carry SI units.
/// Particles are (x_pixel, y_pixel, amplitude) with x the column index of the
/// row-major image.
///
/// The default pitch puts about eight Fresnel half-zones across the 64-pixel
/// window so the kernel shows its characteristic rings; much finer pitches
/// leave only the smooth first zone in view and the deconvolution becomes
/// hopelessly ill-conditioned.
struct HologramSpec {
  Index image_size = 64;
  double pixel_pitch = 35e-6;
  double wavelength = 630e-9;
  double distance = 0.25;
  std::vector<std::tuple<Index, Index, double>> particles;
  double noise_sigma = 0.0;
  double alpha = 0.05;
};

struct FresnelKernel {
  Matrix samples;       // image_size x image_size, unit l2 norm, centered
  double raw_scale;     // l2 norm of the raw sin(pi r^2/(lambda z))/(lambda z) samples
};

/// Samples kappa_z(x, y) = sin(pi (x^2+y^2)/(lambda z))/(lambda z) on the
/// centered pixel grid (x = (i - size/2) * pitch) and normalizes to unit
/// l2 norm; the raw scale is kept alongside.
FresnelKernel fresnel_kernel(const HologramSpec& spec);

/// Builds the deconvolution problem.  Ground truth is the spike coefficient
/// vector; g = K truth plus seeded Gaussian noise of strength noise_sigma.
std::pair<Problem, Vector> make_deconvolution_problem(const DeconvSpec& spec, std::uint64_t seed);

/// Builds the holography problem.  The convolution runs on a work grid with a
/// zero-padding margin of one kernel radius (half the image) so wrap-around
/// cannot reach the observation window.  Ground truth is the particle
/// indicator image (flattened row-major).
std::pair<Problem, Vector> make_hologram_problem(const HologramSpec& spec, std::uint64_t seed);

/// Seeded dense Gaussian instance rescaled to ||K|| <= 1 with a random sparse
/// ground truth and noiseless data.  Gaussian matrices have the finite basis
/// injectivity property almost surely, which the rate tests rely on.
std::pair<Problem, Vector> make_random_fbi_problem(Index m, Index n, Index sparsity, double alpha,
                                                   std::uint64_t seed);

/// Random particle layout for hologram experiments: count points inside the
/// image with at least min_separation pixels between any two and a small
/// clearance from the border.
std::vector<std::tuple<Index, Index, double>> random_particles(Index image_size, int count,
                                                               Index min_separation,
                                                               std::uint64_t seed);

}  // namespace proxpoint
