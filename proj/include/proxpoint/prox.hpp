#pragma once

#include "proxpoint/problem.hpp"

namespace proxpoint {

/// Componentwise shrinkage: u_i - c for u_i > c, 0 for |u_i| <= c, u_i + c
/// for u_i < -c.  This is the proximal map of c||.||_1.
Vector soft_threshold(const Vector& u, double c);

/// Projection of u onto the set alpha*Sign(y), componentwise:
///   alpha            if y_i > 0, or y_i = 0 and u_i > alpha
///  -alpha            if y_i < 0, or y_i = 0 and u_i < -alpha
///   u_i              if y_i = 0 and |u_i| <= alpha.
/// Zeros of y are tested exactly; soft-thresholding produces exact zeros so
/// no tolerance band is involved.
Vector sign_set_projection(const Vector& y, const Vector& u, double alpha);

/// Inexactness certificate for an approximate subproblem solution y:
/// v is a subgradient element of Psi at y and eps the residual with
/// v + mu (y - anchor) + eps = 0.
struct Certificate {
  Vector v;
  Vector eps;
  double norm_v = 0.0;
  double norm_eps = 0.0;
};

/// Builds the certificate from
///   r   = -K*(K y - g) - mu (y - anchor)
///   eps = r - P_{alpha Sign(y)}(r)
///   v   = -mu (y - anchor) - eps,
/// which places v in K*(K y - g) + alpha Sign(y) by construction.
Certificate certificate(const Problem& p, const Vector& y, const Vector& anchor, double mu);

}  // namespace proxpoint
