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

// Dense complex kernel shared by every other header: Hermitian square roots,
// operator norms, nullspaces and the tolerance policy.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "discgrp/error.hpp"

namespace discgrp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Global numerical policy. `margin` is the distance kept from the unit
/// sphere: "strictly inside the disc" means norm <= 1 - margin.
struct Tolerance {
  double abs_tol = 1e-10;
  double margin = 0.05;

  void validate() const {
    if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
    if (!(margin > 0.0 && margin < 1.0))
      throw Error(ErrorCode::InvalidArgument, "margin must lie in (0,1)");
  }

  double radius() const { return 1.0 - margin; }
};

inline bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

/// Largest singular value; 0 for empty matrices. Large inputs go through
/// the divide-and-conquer SVD.
inline double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) > 24) return Eigen::BDCSVD<CMatrix>(m).singularValues()(0);
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double smallest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline double hermitian_defect(const CMatrix& p) { return operator_norm(p - p.adjoint()); }

namespace detail {

// Applies f to the spectrum of a Hermitian matrix. Eigenvalues are clamped at
// zero before f is applied.
template <class F>
CMatrix hermitian_function(const CMatrix& p, F f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()));
  Eigen::VectorXd lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) lam(i) = f(std::max(lam(i), 0.0));
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline void check_square_hermitian(const CMatrix& p, const Tolerance& tol) {
  if (p.rows() != p.cols()) throw Error(ErrorCode::ShapeMismatch, "expected a square matrix");
  require_finite(p, "Hermitian input");
  if (hermitian_defect(p) > tol.abs_tol)
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within abs_tol");
}

}  // namespace detail

inline double min_eigenvalue(const CMatrix& p) {
  if (p.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Positive square root of a Hermitian positive semidefinite matrix.
inline CMatrix hermitian_sqrt(const CMatrix& p, const Tolerance& tol = {}) {
  detail::check_square_hermitian(p, tol);
  if (p.size() > 0 && min_eigenvalue(p) < -tol.abs_tol)
    throw Error(ErrorCode::NotPositiveDefinite, "matrix has a negative eigenvalue");
  return detail::hermitian_function(p, [](double x) { return std::sqrt(x); });
}

/// P^{-1/2} for Hermitian positive definite P. A smallest eigenvalue at or
/// below abs_tol is reported as NotPositiveDefinite; for P = I - g*g this is
/// exactly the signal that g left the open unit ball.
inline CMatrix hermitian_inv_sqrt(const CMatrix& p, const Tolerance& tol = {}) {
  detail::check_square_hermitian(p, tol);
  if (p.size() > 0 && min_eigenvalue(p) <= tol.abs_tol)
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue is not above abs_tol");
  return detail::hermitian_function(p, [](double x) { return 1.0 / std::sqrt(x); });
}

/// P^{-1} through the spectral decomposition (used where the inverse of a
/// defect square is needed without series truncation).
inline CMatrix hermitian_inverse(const CMatrix& p, const Tolerance& tol = {}) {
  detail::check_square_hermitian(p, tol);
  if (p.size() > 0 && min_eigenvalue(p) <= tol.abs_tol)
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue is not above abs_tol");
  return detail::hermitian_function(p, [](double x) { return 1.0 / x; });
}

/// Orthonormal basis of {x : |Lx| <= abs_tol * |L| * |x|}, one column vector
/// per entry. Empty when L is injective.
inline std::vector<CVector> nullspace_basis(const CMatrix& l, const Tolerance& tol = {}) {
  require_finite(l, "linear map");
  std::vector<CVector> out;
  const Index n = l.cols();
  if (n == 0) return out;
  if (l.rows() == 0 || l.isZero(0.0)) {
    for (Index k = 0; k < n; ++k) out.push_back(CVector::Unit(n, k));
    return out;
  }
  // Pad to square so JacobiSVD yields a full right-singular basis.
  CMatrix a = l;
  if (a.rows() < n) {
    a.conservativeResize(n, Eigen::NoChange);
    a.bottomRows(n - l.rows()).setZero();
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = tol.abs_tol * s(0);
  for (Index k = 0; k < n; ++k) {
    const double sk = k < s.size() ? s(k) : 0.0;
    if (sk <= cut) out.push_back(svd.matrixV().col(k));
  }
  return out;
}

/// Nearest unitary in operator norm (polar factor); used to scrub rounding
/// drift from products of unitaries.
inline CMatrix nearest_unitary(const CMatrix& m) {
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline double unitarity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return operator_norm(m * m.adjoint() - CMatrix::Identity(m.rows(), m.cols()));
}

/// Stacks a matrix column-major into a vector.
inline CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Index rows, Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Frobenius inner product <a, b> = tr(a* b).
inline Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

}  // namespace discgrp
