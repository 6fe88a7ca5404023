/* Copyright 2026 The discgrp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Homogeneous coordinates [U eta*] and the block-matrix representation of
// disc automorphisms acting on them by right multiplication.

#pragma once

#include <array>

#include "discgrp/disc_group.hpp"

namespace discgrp {

/// The class of (U, eta*) modulo (U, eta*) ~ (C U, C eta*) for invertible C
/// in sigma(A)'.
struct PPoint {
  CMatrix u;
  CMatrix eta;
};

inline PPoint homogeneous(const Intertwiner& eta_star) {
  return {CMatrix::Identity(eta_star.rows(), eta_star.rows()), eta_star.matrix()};
}

/// (I, U^{-1} eta*).
inline PPoint canonicalize(const PPoint& p, const Tolerance& tol = {}) {
  if (p.u.rows() != p.u.cols() || p.u.rows() != p.eta.rows())
    throw Error(ErrorCode::ShapeMismatch, "U must be square with as many rows as eta*");
  if (p.u.size() > 0 && smallest_singular_value(p.u) <= tol.abs_tol)
    throw Error(ErrorCode::SingularU, "U is not invertible");
  return {CMatrix::Identity(p.u.rows(), p.u.cols()), p.u.partialPivLu().solve(p.eta)};
}

/// Square operator on H (+) (E (x) H).
class RepMatrix {
 public:
  RepMatrix(CMatrix t, Index dim_h) : t_(std::move(t)), dim_h_(dim_h) {
    if (t_.rows() != t_.cols() || dim_h_ < 0 || dim_h_ > t_.rows())
      throw Error(ErrorCode::ShapeMismatch, "rep matrix must be square with an H block");
    require_finite(t_, "rep matrix");
  }

  /// kappa = diag(I_H, -I_EH).
  static RepMatrix kappa(Index dim_h, Index dim_eh) {
    CMatrix k = CMatrix::Identity(dim_h + dim_eh, dim_h + dim_eh);
    k.bottomRightCorner(dim_eh, dim_eh) *= -1.0;
    return {std::move(k), dim_h};
  }

  static RepMatrix identity(Index dim_h, Index dim_eh) {
    return {CMatrix::Identity(dim_h + dim_eh, dim_h + dim_eh), dim_h};
  }

  const CMatrix& matrix() const { return t_; }
  Index dim_h() const { return dim_h_; }
  Index dim_eh() const { return t_.rows() - dim_h_; }

  CMatrix a11() const { return t_.topLeftCorner(dim_h_, dim_h_); }
  CMatrix a12() const { return t_.topRightCorner(dim_h_, dim_eh()); }
  CMatrix a21() const { return t_.bottomLeftCorner(dim_eh(), dim_h_); }
  CMatrix a22() const { return t_.bottomRightCorner(dim_eh(), dim_eh()); }

 private:
  CMatrix t_;
  Index dim_h_;
};

/// [[D^{-1}u*, gamma* D_*^{-1} v*], [-gamma D^{-1} u*, -D_*^{-1} v*]];
/// [I eta*] T = [*, *] ~ [I g(eta*)].
inline RepMatrix rep_matrix(const DiscAutomorphism& g, const Tolerance& tol = {}) {
  return {detail::transfer_matrix(g, tol), g.dim_h()};
}

/// Right-multiplies the block row [U eta*] by T and canonicalises.
inline PPoint act(const PPoint& p, const RepMatrix& t, const Tolerance& tol = {}) {
  if (p.u.rows() != p.eta.rows() || p.u.cols() != t.dim_h() || p.eta.cols() != t.dim_eh())
    throw Error(ErrorCode::ShapeMismatch, "point and rep matrix shapes differ");
  PPoint q{p.u * t.a11() + p.eta * t.a21(), p.u * t.a12() + p.eta * t.a22()};
  return canonicalize(q, tol);
}

/// Element of M^op / ~. The group product reverses matrix order:
///   [T] * [S] = [S T],   so   Psi(g o f) = Psi(g) * Psi(f) = [T_f T_g].
/// Equality is extensional: two classes agree iff they induce the same
/// automorphism (same gamma*, same isometry on a basis).
struct RepClass {
  RepMatrix rep;
};

inline RepClass psi(const DiscAutomorphism& g, const Tolerance& tol = {}) {
  return {rep_matrix(g, tol)};
}

inline RepClass identity_class(Index dim_h, Index dim_eh) {
  return {RepMatrix::identity(dim_h, dim_eh)};
}

inline RepClass op_product(const RepClass& a, const RepClass& b) {
  if (a.rep.dim_h() != b.rep.dim_h() || a.rep.dim_eh() != b.rep.dim_eh())
    throw Error(ErrorCode::ShapeMismatch, "classes live on different spaces");
  return {RepMatrix(b.rep.matrix() * a.rep.matrix(), a.rep.dim_h())};
}

/// The automorphism a class induces (Psi^{-1}).
inline DiscAutomorphism automorphism_of(const RepClass& a, const Tolerance& tol = {}) {
  return canonical_decomposition(a.rep.matrix(), a.rep.dim_h(), tol);
}

/// [[u D^{-1}, u gamma* D_*^{-1}], [-v gamma D^{-1}, -v D_*^{-1}]] for the
/// canonical data of a.
inline RepClass rep_inverse(const RepClass& a, const Tolerance& tol = {}) {
  const DiscAutomorphism g = automorphism_of(a, tol);
  const MoebiusMap mg(g.gamma_star, tol);
  const CMatrix& gs = g.gamma_star.matrix();
  const Index h = gs.rows();
  const Index k = gs.cols();
  const CMatrix& u = g.omega.u;
  const CMatrix v = g.omega.vstar.adjoint();
  CMatrix t(h + k, h + k);
  t.topLeftCorner(h, h) = u * mg.delta_inv();
  t.topRightCorner(h, k) = u * gs * mg.delta_star_inv();
  t.bottomLeftCorner(k, h) = -v * gs.adjoint() * mg.delta_inv();
  t.bottomRightCorner(k, k) = -v * mg.delta_star_inv();
  return {RepMatrix(std::move(t), h)};
}

inline double class_distance(const IntertwinerSpace& space, const RepClass& a, const RepClass& b,
                             const Tolerance& tol = {}) {
  return automorphism_distance(space, automorphism_of(a, tol), automorphism_of(b, tol));
}

/// |T kappa T* - kappa|.
inline double pseudo_unitary_defect(const RepMatrix& t) {
  const RepMatrix k = RepMatrix::kappa(t.dim_h(), t.dim_eh());
  return operator_norm(t.matrix() * k.matrix() * t.matrix().adjoint() - k.matrix());
}

/// Residual norms of
///   (1) D^{-2} - gamma* D_*^{-2} gamma   = I_H
///   (2) gamma D^{-2} gamma* - D_*^{-2}   = -I_EH
///   (3) -D^{-2} gamma* + gamma* D_*^{-2} = 0
///   (4) -gamma D^{-2} + D_*^{-2} gamma   = 0
/// with D^{-2} = (I - gamma* gamma)^{-1} from the spectral decomposition.
inline std::array<double, 4> neumann_identities_defect(const Intertwiner& gamma_star,
                                                       const Tolerance& tol = {}) {
  if (gamma_star.norm() > tol.radius() + tol.abs_tol)
    throw Error(ErrorCode::OutsideDisc, "|gamma*| exceeds 1 - margin");
  const CMatrix& g = gamma_star.matrix();
  const CMatrix gh = g.adjoint();
  const Index h = g.rows();
  const Index k = g.cols();
  const CMatrix ih = CMatrix::Identity(h, h);
  const CMatrix ie = CMatrix::Identity(k, k);
  const CMatrix d2 = hermitian_inverse(ih - g * gh, tol);
  const CMatrix d2s = hermitian_inverse(ie - gh * g, tol);
  return {operator_norm(d2 - g * d2s * gh - ih), operator_norm(gh * d2 * g - d2s + ie),
          operator_norm(-d2 * g + g * d2s), operator_norm(-gh * d2 + d2s * gh)};
}

/// The same identities with (I - X)^{-1} replaced by Sum_{n < order} X^n.
/// Truncation error is of order |gamma|^{2 order}; used only as a cross-check.
inline std::array<double, 4> neumann_series_defect(const Intertwiner& gamma_star, int order = 200) {
  const CMatrix& g = gamma_star.matrix();
  const CMatrix gh = g.adjoint();
  auto series = [order](const CMatrix& x) {
    CMatrix acc = CMatrix::Identity(x.rows(), x.cols());
    CMatrix term = acc;
    for (int n = 1; n < order; ++n) {
      term = term * x;
      acc += term;
    }
    return acc;
  };
  const CMatrix ih = CMatrix::Identity(g.rows(), g.rows());
  const CMatrix ie = CMatrix::Identity(g.cols(), g.cols());
  const CMatrix d2 = series(g * gh);
  const CMatrix d2s = series(gh * g);
  return {operator_norm(d2 - g * d2s * gh - ih), operator_norm(gh * d2 * g - d2s + ie),
          operator_norm(-d2 * g + g * d2s), operator_norm(-gh * d2 + d2s * gh)};
}

}  // namespace discgrp
