#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "proxpoint/errors.hpp"

namespace proxpoint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class OperatorKind {
  dense,
  circular_conv_1d,
  circular_conv_2d,
  composition,
  hat_synthesis,
};

std::string to_string(OperatorKind kind);

/// Bounded linear map between finite-dimensional coefficient spaces.
///
/// Implementations provide the forward map and its exact adjoint; the pair is
/// checked by the inner-product test in the unit suite.  Operators are
/// immutable after construction and safe to share across threads.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;

  LinearOperator(const LinearOperator&) = delete;
  LinearOperator& operator=(const LinearOperator&) = delete;

  Index domain_dim() const { return domain_dim_; }
  Index range_dim() const { return range_dim_; }
  OperatorKind kind() const { return kind_; }

  /// K u.  Throws DimensionError on length mismatch, std::invalid_argument on
  /// non-finite input.
  Vector apply(const Vector& u) const;

  /// K* v.  Same checks as apply.
  Vector apply_adjoint(const Vector& v) const;

protected:
  LinearOperator(Index domain_dim, Index range_dim, OperatorKind kind)
      : domain_dim_(domain_dim), range_dim_(range_dim), kind_(kind) {}

  virtual Vector do_apply(const Vector& u) const = 0;
  virtual Vector do_apply_adjoint(const Vector& v) const = 0;

private:
  Index domain_dim_;
  Index range_dim_;
  OperatorKind kind_;
};

using OperatorPtr = std::shared_ptr<LinearOperator>;

/// Dense matrix operator.
class DenseOperator final : public LinearOperator {
public:
  explicit DenseOperator(Matrix mat);

  const Matrix& matrix() const { return mat_; }

protected:
  Vector do_apply(const Vector& u) const override;
  Vector do_apply_adjoint(const Vector& v) const override;

private:
  Matrix mat_;
};

namespace detail {
class FftConvolver;
}

/// Circular (periodic) convolution on a 1D grid.  The kernel is indexed with
/// its origin at sample 0, so a delta kernel is the identity.  Application
/// goes through the frequency domain; convolve_direct is the O(n^2) reference
/// path used to cross-check it.
class CircularConv1D final : public LinearOperator {
public:
  explicit CircularConv1D(Vector kernel);
  ~CircularConv1D() override;

  const Vector& kernel() const { return kernel_; }

  Vector convolve_direct(const Vector& u) const;
  Vector correlate_direct(const Vector& v) const;

protected:
  Vector do_apply(const Vector& u) const override;
  Vector do_apply_adjoint(const Vector& v) const override;

private:
  Vector kernel_;
  std::unique_ptr<detail::FftConvolver> fft_;
};

/// Circular convolution on a 2D grid with an optional zero-padding margin.
///
/// The kernel lives on the work grid of (base + 2*margin) x (base + 2*margin)
/// samples with its origin at pixel (0,0).  Inputs and outputs are base-grid
/// images flattened row-major; with margin > 0 they are zero-embedded into
/// the work grid, convolved circularly there, and restricted back.  Since the
/// adjoint of the embedding is the restriction, the composite adjoint stays
/// exact.
class CircularConv2D final : public LinearOperator {
public:
  CircularConv2D(Matrix kernel, Index margin = 0);
  ~CircularConv2D() override;

  const Matrix& kernel() const { return kernel_; }
  Index margin() const { return margin_; }
  Index base_rows() const { return base_rows_; }
  Index base_cols() const { return base_cols_; }

  Vector convolve_direct(const Vector& u) const;
  Vector correlate_direct(const Vector& v) const;

protected:
  Vector do_apply(const Vector& u) const override;
  Vector do_apply_adjoint(const Vector& v) const override;

private:
  Vector embed(const Vector& u) const;
  Vector restrict_(const Vector& w) const;
  Vector apply_impl(const Vector& u, bool adjoint, bool direct) const;

  Matrix kernel_;
  Index margin_;
  Index base_rows_;
  Index base_cols_;
  Index work_rows_;
  Index work_cols_;
  std::unique_ptr<detail::FftConvolver> fft_;
};

/// A o B.  domain = B.domain, range = A.range.
class CompositionOperator final : public LinearOperator {
public:
  CompositionOperator(OperatorPtr outer, OperatorPtr inner);

  const OperatorPtr& outer() const { return outer_; }
  const OperatorPtr& inner() const { return inner_; }

protected:
  Vector do_apply(const Vector& u) const override;
  Vector do_apply_adjoint(const Vector& v) const override;

private:
  OperatorPtr outer_;
  OperatorPtr inner_;
};

/// Synthesis with piecewise-linear hat functions on a circular grid.
///
/// Column j is a hat of peak 1 centered at grid node j*(grid_size/n_coeffs),
/// falling linearly to 0 over half a node spacing on each side, so for
/// n_coeffs == grid_size the operator is the identity.
class HatSynthesisOperator final : public LinearOperator {
public:
  HatSynthesisOperator(Index n_coeffs, Index grid_size);

  Index n_coeffs() const { return domain_dim(); }
  Index grid_size() const { return range_dim(); }

protected:
  Vector do_apply(const Vector& u) const override;
  Vector do_apply_adjoint(const Vector& v) const override;

private:
  // per grid point: contributing coefficient index and hat weight
  std::vector<Index> node_of_;
  std::vector<double> weight_of_;
};

OperatorPtr make_dense(Matrix mat);
OperatorPtr make_circular_conv_1d(Vector kernel);
OperatorPtr make_circular_conv_2d(Matrix kernel, Index margin = 0);
OperatorPtr make_composition(OperatorPtr outer, OperatorPtr inner);
OperatorPtr make_hat_synthesis(Index n_coeffs, Index grid_size);
OperatorPtr make_identity(Index n);

/// s * K as a concrete operator: scales the matrix or kernel of the leaf
/// (recursing through compositions); synthesis operators are composed with a
/// scaled delta kernel since they carry no amplitude of their own.
OperatorPtr scale_operator(const OperatorPtr& op, double s);

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration on K*K from the deterministic all-ones start vector.
/// Returns the square root of the dominant eigenvalue estimate; converged is
/// set once successive estimates differ by less than tol relatively.
NormEstimate estimate_norm(const LinearOperator& op, int max_iters = 500, double tol = 1e-9);

}  // namespace proxpoint
