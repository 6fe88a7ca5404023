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

#pragma once

#include <utility>
#include <vector>

#include "discgrp/linalg.hpp"

namespace discgrp {

/// A space of intertwiners M : K_out -> K_in, i.e. operators with
/// M * right[k] == left[k] * M for every generator pair k. Graph
/// correspondences and their Morita transports both produce one of these;
/// everything in the disc group that only needs "is this an intertwiner"
/// and "a basis to test on" is written against this type.
class IntertwinerSpace {
 public:
  IntertwinerSpace() = default;

  /// `basis` must be Frobenius-orthonormal and span the solution space.
  IntertwinerSpace(Index dim_h, Index dim_eh, std::vector<CMatrix> left, std::vector<CMatrix> right,
                   std::vector<CMatrix> basis)
      : dim_h_(dim_h), dim_eh_(dim_eh), left_(std::move(left)), right_(std::move(right)),
        basis_(std::move(basis)) {}

  /// Builds the basis by solving the intertwining relations directly.
  static IntertwinerSpace from_relations(Index dim_h, Index dim_eh, std::vector<CMatrix> left,
                                         std::vector<CMatrix> right, const Tolerance& tol = {}) {
    const CMatrix system = relation_matrix(dim_h, dim_eh, left, right);
    std::vector<CMatrix> basis;
    for (const CVector& x : nullspace_basis(system, tol)) basis.push_back(unvec(x, dim_h, dim_eh));
    return {dim_h, dim_eh, std::move(left), std::move(right), std::move(basis)};
  }

  /// Stacked linear map vec(M) -> [vec(M R_k - L_k M)]_k.
  static CMatrix relation_matrix(Index dim_h, Index dim_eh, const std::vector<CMatrix>& left,
                                 const std::vector<CMatrix>& right) {
    const Index n = dim_h * dim_eh;
    CMatrix system = CMatrix::Zero(n * static_cast<Index>(left.size()), n);
    const CMatrix ih = CMatrix::Identity(dim_h, dim_h);
    const CMatrix ie = CMatrix::Identity(dim_eh, dim_eh);
    for (std::size_t k = 0; k < left.size(); ++k)
      system.middleRows(static_cast<Index>(k) * n, n) =
          kron(right[k].transpose(), ih) - kron(ie, left[k]);
    return system;
  }

  Index dim_h() const { return dim_h_; }
  Index dim_eh() const { return dim_eh_; }
  Index dimension() const { return static_cast<Index>(basis_.size()); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const std::vector<CMatrix>& left() const { return left_; }
  const std::vector<CMatrix>& right() const { return right_; }

  bool has_shape(const CMatrix& m) const { return m.rows() == dim_h_ && m.cols() == dim_eh_; }

  void require_shape(const CMatrix& m) const {
    if (!has_shape(m))
      throw Error(ErrorCode::ShapeMismatch, "expected a " + std::to_string(dim_h_) + "x" +
                                                std::to_string(dim_eh_) + " intertwiner");
  }

  /// max_k |M R_k - L_k M|.
  double relation_residual(const CMatrix& m) const {
    require_shape(m);
    double worst = 0.0;
    for (std::size_t k = 0; k < left_.size(); ++k)
      worst = std::max(worst, operator_norm(m * right_[k] - left_[k] * m));
    return worst;
  }

  bool contains(const CMatrix& m, const Tolerance& tol = {}) const {
    return relation_residual(m) <= tol.abs_tol;
  }

  /// Frobenius coordinates of m against the basis.
  CVector coordinates(const CMatrix& m) const {
    require_shape(m);
    CVector c(dimension());
    for (Index k = 0; k < dimension(); ++k) c(k) = frobenius_inner(basis_[k], m);
    return c;
  }

  CMatrix combine(const CVector& coeffs) const {
    CMatrix out = CMatrix::Zero(dim_h_, dim_eh_);
    for (Index k = 0; k < dimension(); ++k) out += coeffs(k) * basis_[k];
    return out;
  }

 private:
  Index dim_h_ = 0;
  Index dim_eh_ = 0;
  std::vector<CMatrix> left_;
  std::vector<CMatrix> right_;
  std::vector<CMatrix> basis_;
};

/// Operator-norm distance from m to the span of a Frobenius-orthonormal family.
inline double distance_to_span(const CMatrix& m, const std::vector<CMatrix>& onb) {
  CMatrix r = m;
  for (const CMatrix& b : onb) r -= frobenius_inner(b, m) * b;
  return operator_norm(r);
}

}  // namespace discgrp
