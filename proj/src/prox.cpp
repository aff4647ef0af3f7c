#include "proxpoint/prox.hpp"

namespace proxpoint {

Vector soft_threshold(const Vector& u, double c) {
  if (c < 0) throw std::invalid_argument("soft_threshold: threshold must be nonnegative");
  Vector out(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    const double x = u[i];
    if (x > c)
      out[i] = x - c;
    else if (x < -c)
      out[i] = x + c;
    else
      out[i] = 0.0;
  }
  return out;
}

Vector sign_set_projection(const Vector& y, const Vector& u, double alpha) {
  if (y.size() != u.size()) throw DimensionError("sign_set_projection", y.size(), u.size());
  Vector out(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    if (y[i] > 0.0 || (y[i] == 0.0 && u[i] > alpha))
      out[i] = alpha;
    else if (y[i] < 0.0 || (y[i] == 0.0 && u[i] < -alpha))
      out[i] = -alpha;
    else
      out[i] = u[i];
  }
  return out;
}

Certificate certificate(const Problem& p, const Vector& y, const Vector& anchor, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("certificate: mu must be positive");
  if (anchor.size() != y.size()) throw DimensionError("certificate anchor", y.size(), anchor.size());
  const Vector grad = p.K->apply_adjoint(p.K->apply(y) - p.g);
  const Vector r = -grad - mu * (y - anchor);
  Certificate cert;
  cert.eps = r - sign_set_projection(y, r, p.alpha);
  cert.v = -mu * (y - anchor) - cert.eps;
  cert.norm_v = cert.v.norm();
  cert.norm_eps = cert.eps.norm();
  return cert;
}

}  // namespace proxpoint
