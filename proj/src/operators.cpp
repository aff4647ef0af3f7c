#include "proxpoint/operators.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace proxpoint {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::dense: return "dense";
    case OperatorKind::circular_conv_1d: return "circular_conv_1d";
    case OperatorKind::circular_conv_2d: return "circular_conv_2d";
    case OperatorKind::composition: return "composition";
    case OperatorKind::hat_synthesis: return "hat_synthesis";
  }
  return "unknown";
}

Vector LinearOperator::apply(const Vector& u) const {
  if (u.size() != domain_dim_) throw DimensionError("apply", domain_dim_, u.size());
  if (!u.allFinite()) throw std::invalid_argument("apply: non-finite input");
  return do_apply(u);
}

Vector LinearOperator::apply_adjoint(const Vector& v) const {
  if (v.size() != range_dim_) throw DimensionError("apply_adjoint", range_dim_, v.size());
  if (!v.allFinite()) throw std::invalid_argument("apply_adjoint: non-finite input");
  return do_apply_adjoint(v);
}

// ---------------------------------------------------------------------------
// FFT machinery

namespace detail {

// FFTW plan creation is not thread-safe; execution with the new-array
// interface is.  All buffers come from fftw_malloc so the alignment matches
// the one the plans were created with.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

class FftConvolver {
public:
  // rows x cols grid, row-major; cols == 1 gives the 1D case.
  FftConvolver(const double* kernel, Index rows, Index cols) : rows_(rows), cols_(cols) {
    const std::size_t n = size();
    FftwBuffer in(n), out(n);
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      plan_fwd_ = fftw_plan_dft_2d(static_cast<int>(rows_), static_cast<int>(cols_), in.data,
                                   out.data, FFTW_FORWARD, FFTW_ESTIMATE);
      plan_bwd_ = fftw_plan_dft_2d(static_cast<int>(rows_), static_cast<int>(cols_), in.data,
                                   out.data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    kernel_hat_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      in.data[i][0] = kernel[i];
      in.data[i][1] = 0.0;
    }
    fftw_execute_dft(plan_fwd_, in.data, out.data);
    for (std::size_t i = 0; i < n; ++i)
      kernel_hat_[i] = std::complex<double>(out.data[i][0], out.data[i][1]);
  }

  ~FftConvolver() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_fwd_);
    fftw_destroy_plan(plan_bwd_);
  }

  FftConvolver(const FftConvolver&) = delete;
  FftConvolver& operator=(const FftConvolver&) = delete;

  std::size_t size() const { return static_cast<std::size_t>(rows_ * cols_); }

  // Circular convolution with the kernel (adjoint = correlation, i.e. the
  // conjugate spectrum).
  void convolve(const double* in, double* out, bool adjoint) const {
    const std::size_t n = size();
    FftwBuffer a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a.data[i][0] = in[i];
      a.data[i][1] = 0.0;
    }
    fftw_execute_dft(plan_fwd_, a.data, b.data);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> k = adjoint ? std::conj(kernel_hat_[i]) : kernel_hat_[i];
      const std::complex<double> x(b.data[i][0], b.data[i][1]);
      const std::complex<double> y = x * k * scale;
      b.data[i][0] = y.real();
      b.data[i][1] = y.imag();
    }
    fftw_execute_dft(plan_bwd_, b.data, a.data);
    for (std::size_t i = 0; i < n; ++i) out[i] = a.data[i][0];
  }

private:
  Index rows_;
  Index cols_;
  std::vector<std::complex<double>> kernel_hat_;
  fftw_plan plan_fwd_;
  fftw_plan plan_bwd_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Dense

DenseOperator::DenseOperator(Matrix mat)
    : LinearOperator(mat.cols(), mat.rows(), OperatorKind::dense), mat_(std::move(mat)) {
  if (mat_.size() == 0) throw std::invalid_argument("DenseOperator: empty matrix");
}

Vector DenseOperator::do_apply(const Vector& u) const { return mat_ * u; }

Vector DenseOperator::do_apply_adjoint(const Vector& v) const { return mat_.transpose() * v; }

// ---------------------------------------------------------------------------
// 1D circular convolution

CircularConv1D::CircularConv1D(Vector kernel)
    : LinearOperator(kernel.size(), kernel.size(), OperatorKind::circular_conv_1d),
      kernel_(std::move(kernel)) {
  if (kernel_.size() == 0) throw std::invalid_argument("CircularConv1D: empty kernel");
  fft_ = std::make_unique<detail::FftConvolver>(kernel_.data(), kernel_.size(), 1);
}

CircularConv1D::~CircularConv1D() = default;

Vector CircularConv1D::do_apply(const Vector& u) const {
  Vector out(u.size());
  fft_->convolve(u.data(), out.data(), false);
  return out;
}

Vector CircularConv1D::do_apply_adjoint(const Vector& v) const {
  Vector out(v.size());
  fft_->convolve(v.data(), out.data(), true);
  return out;
}

Vector CircularConv1D::convolve_direct(const Vector& u) const {
  const Index n = kernel_.size();
  Vector out = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      Index k = (i - j) % n;
      if (k < 0) k += n;
      acc += kernel_[k] * u[j];
    }
    out[i] = acc;
  }
  return out;
}

Vector CircularConv1D::correlate_direct(const Vector& v) const {
  const Index n = kernel_.size();
  Vector out = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) {
      Index k = (i - j) % n;
      if (k < 0) k += n;
      acc += kernel_[k] * v[i];
    }
    out[j] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2D circular convolution with optional margin

CircularConv2D::CircularConv2D(Matrix kernel, Index margin)
    : LinearOperator((kernel.rows() - 2 * margin) * (kernel.cols() - 2 * margin),
                     (kernel.rows() - 2 * margin) * (kernel.cols() - 2 * margin),
                     OperatorKind::circular_conv_2d),
      kernel_(std::move(kernel)),
      margin_(margin),
      base_rows_(kernel_.rows() - 2 * margin),
      base_cols_(kernel_.cols() - 2 * margin),
      work_rows_(kernel_.rows()),
      work_cols_(kernel_.cols()) {
  if (margin_ < 0 || base_rows_ < 1 || base_cols_ < 1)
    throw std::invalid_argument("CircularConv2D: margin too large for kernel grid");
  // flatten row-major for FFTW
  std::vector<double> flat(static_cast<std::size_t>(work_rows_ * work_cols_));
  for (Index r = 0; r < work_rows_; ++r)
    for (Index c = 0; c < work_cols_; ++c)
      flat[static_cast<std::size_t>(r * work_cols_ + c)] = kernel_(r, c);
  fft_ = std::make_unique<detail::FftConvolver>(flat.data(), work_rows_, work_cols_);
}

CircularConv2D::~CircularConv2D() = default;

Vector CircularConv2D::embed(const Vector& u) const {
  if (margin_ == 0) return u;
  Vector w = Vector::Zero(work_rows_ * work_cols_);
  for (Index r = 0; r < base_rows_; ++r)
    for (Index c = 0; c < base_cols_; ++c)
      w[(r + margin_) * work_cols_ + (c + margin_)] = u[r * base_cols_ + c];
  return w;
}

Vector CircularConv2D::restrict_(const Vector& w) const {
  if (margin_ == 0) return w;
  Vector u(base_rows_ * base_cols_);
  for (Index r = 0; r < base_rows_; ++r)
    for (Index c = 0; c < base_cols_; ++c)
      u[r * base_cols_ + c] = w[(r + margin_) * work_cols_ + (c + margin_)];
  return u;
}

Vector CircularConv2D::apply_impl(const Vector& u, bool adjoint, bool direct) const {
  const Vector w = embed(u);
  Vector out(w.size());
  if (direct) {
    const Index n0 = work_rows_, n1 = work_cols_;
    for (Index r = 0; r < n0; ++r) {
      for (Index c = 0; c < n1; ++c) {
        double acc = 0.0;
        for (Index rr = 0; rr < n0; ++rr) {
          for (Index cc = 0; cc < n1; ++cc) {
            Index dr = adjoint ? (rr - r) % n0 : (r - rr) % n0;
            Index dc = adjoint ? (cc - c) % n1 : (c - cc) % n1;
            if (dr < 0) dr += n0;
            if (dc < 0) dc += n1;
            acc += kernel_(dr, dc) * w[rr * n1 + cc];
          }
        }
        out[r * n1 + c] = acc;
      }
    }
  } else {
    fft_->convolve(w.data(), out.data(), adjoint);
  }
  return restrict_(out);
}

Vector CircularConv2D::do_apply(const Vector& u) const { return apply_impl(u, false, false); }

Vector CircularConv2D::do_apply_adjoint(const Vector& v) const { return apply_impl(v, true, false); }

Vector CircularConv2D::convolve_direct(const Vector& u) const { return apply_impl(u, false, true); }

Vector CircularConv2D::correlate_direct(const Vector& v) const { return apply_impl(v, true, true); }

// ---------------------------------------------------------------------------
// Composition

CompositionOperator::CompositionOperator(OperatorPtr outer, OperatorPtr inner)
    : LinearOperator(inner ? inner->domain_dim() : 0, outer ? outer->range_dim() : 0,
                     OperatorKind::composition),
      outer_(std::move(outer)),
      inner_(std::move(inner)) {
  if (!outer_ || !inner_) throw std::invalid_argument("CompositionOperator: null child");
  if (outer_->domain_dim() != inner_->range_dim())
    throw DimensionError("CompositionOperator", outer_->domain_dim(), inner_->range_dim());
}

Vector CompositionOperator::do_apply(const Vector& u) const {
  return outer_->apply(inner_->apply(u));
}

Vector CompositionOperator::do_apply_adjoint(const Vector& v) const {
  return inner_->apply_adjoint(outer_->apply_adjoint(v));
}

// ---------------------------------------------------------------------------
// Hat synthesis

HatSynthesisOperator::HatSynthesisOperator(Index n_coeffs, Index grid_size)
    : LinearOperator(n_coeffs, grid_size, OperatorKind::hat_synthesis) {
  if (n_coeffs < 1 || grid_size < n_coeffs)
    throw std::invalid_argument("HatSynthesisOperator: need grid_size >= n_coeffs >= 1");
  if (grid_size % n_coeffs != 0)
    throw std::invalid_argument("HatSynthesisOperator: grid_size must be divisible by n_coeffs");
  const Index spacing = grid_size / n_coeffs;
  const double half_width = static_cast<double>(spacing) / 2.0;
  node_of_.assign(static_cast<std::size_t>(grid_size), -1);
  weight_of_.assign(static_cast<std::size_t>(grid_size), 0.0);
  // Hats have disjoint positive parts (each grid point is within half a
  // spacing of at most one node), so one (node, weight) pair per point.
  for (Index i = 0; i < grid_size; ++i) {
    const Index j = ((i + spacing / 2) / spacing) % n_coeffs;  // nearest node
    Index d = std::abs(i - j * spacing);
    d = std::min(d, grid_size - d);
    const double w = 1.0 - static_cast<double>(d) / half_width;
    if (w > 0.0) {
      node_of_[static_cast<std::size_t>(i)] = j;
      weight_of_[static_cast<std::size_t>(i)] = w;
    }
  }
}

Vector HatSynthesisOperator::do_apply(const Vector& u) const {
  Vector out = Vector::Zero(range_dim());
  for (Index i = 0; i < range_dim(); ++i) {
    const Index j = node_of_[static_cast<std::size_t>(i)];
    if (j >= 0) out[i] = weight_of_[static_cast<std::size_t>(i)] * u[j];
  }
  return out;
}

Vector HatSynthesisOperator::do_apply_adjoint(const Vector& v) const {
  Vector out = Vector::Zero(domain_dim());
  for (Index i = 0; i < range_dim(); ++i) {
    const Index j = node_of_[static_cast<std::size_t>(i)];
    if (j >= 0) out[j] += weight_of_[static_cast<std::size_t>(i)] * v[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factories

OperatorPtr make_dense(Matrix mat) { return std::make_shared<DenseOperator>(std::move(mat)); }

OperatorPtr make_circular_conv_1d(Vector kernel) {
  return std::make_shared<CircularConv1D>(std::move(kernel));
}

OperatorPtr make_circular_conv_2d(Matrix kernel, Index margin) {
  return std::make_shared<CircularConv2D>(std::move(kernel), margin);
}

OperatorPtr make_composition(OperatorPtr outer, OperatorPtr inner) {
  return std::make_shared<CompositionOperator>(std::move(outer), std::move(inner));
}

OperatorPtr make_hat_synthesis(Index n_coeffs, Index grid_size) {
  return std::make_shared<HatSynthesisOperator>(n_coeffs, grid_size);
}

OperatorPtr make_identity(Index n) {
  return make_dense(Matrix::Identity(n, n));
}

OperatorPtr scale_operator(const OperatorPtr& op, double s) {
  if (!op) throw std::invalid_argument("scale_operator: null operator");
  switch (op->kind()) {
    case OperatorKind::dense: {
      const auto& d = static_cast<const DenseOperator&>(*op);
      return make_dense(d.matrix() * s);
    }
    case OperatorKind::circular_conv_1d: {
      const auto& c = static_cast<const CircularConv1D&>(*op);
      return make_circular_conv_1d(c.kernel() * s);
    }
    case OperatorKind::circular_conv_2d: {
      const auto& c = static_cast<const CircularConv2D&>(*op);
      return make_circular_conv_2d(c.kernel() * s, c.margin());
    }
    case OperatorKind::composition: {
      const auto& comp = static_cast<const CompositionOperator&>(*op);
      return make_composition(scale_operator(comp.outer(), s), comp.inner());
    }
    case OperatorKind::hat_synthesis: {
      Vector delta = Vector::Zero(op->range_dim());
      delta[0] = s;
      return make_composition(make_circular_conv_1d(std::move(delta)), op);
    }
  }
  throw std::logic_error("scale_operator: unhandled kind");
}

// ---------------------------------------------------------------------------
// Norm estimation

NormEstimate estimate_norm(const LinearOperator& op, int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("estimate_norm: max_iters must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("estimate_norm: tol must be positive");

  const Index n = op.domain_dim();
  Vector x = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  // Fallback starts in case the all-ones vector lies in the null space of K*K.
  int fallback = 0;
  double prev = -1.0;
  NormEstimate est;
  for (int it = 1; it <= max_iters; ++it) {
    est.iterations = it;
    const Vector y = op.apply_adjoint(op.apply(x));
    const double lambda = x.dot(y);
    est.value = std::sqrt(std::max(lambda, 0.0));
    const double ny = y.norm();
    if (ny == 0.0) {
      if (fallback == 0) {
        for (Index i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
        x /= x.norm();
        fallback = 1;
        prev = -1.0;
        continue;
      }
      if (fallback == 1 && n > 1) {
        x.setZero();
        x[0] = 1.0;
        fallback = 2;
        prev = -1.0;
        continue;
      }
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    if (prev >= 0.0 && std::abs(est.value - prev) <= tol * std::max(est.value, 1.0)) {
      est.converged = true;
      return est;
    }
    prev = est.value;
    x = y / ny;
  }
  return est;
}

}  // namespace proxpoint
