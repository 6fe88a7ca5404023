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

// The intertwining space: operators eta* : E (x) H -> H with
// eta* (phi(a) (x) I) = sigma(a) eta*. For graph correspondences these are
// exactly the block matrices supported on the cells (r(e), e).

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "discgrp/correspondence.hpp"
#include "discgrp/random.hpp"

namespace discgrp {

/// A point of the intertwining space. Holds the matrix only; membership is
/// established by whoever constructs it (see make_intertwiner).
class Intertwiner {
 public:
  Intertwiner() = default;
  explicit Intertwiner(CMatrix m) : m_(std::move(m)) { require_finite(m_, "intertwiner"); }

  static Intertwiner zero(Index dim_h, Index dim_eh) {
    return Intertwiner(CMatrix::Zero(dim_h, dim_eh));
  }

  const CMatrix& matrix() const { return m_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  double norm() const { return operator_norm(m_); }

  friend Intertwiner operator-(const Intertwiner& a) { return Intertwiner(-a.m_); }
  friend Intertwiner operator*(Complex s, const Intertwiner& a) { return Intertwiner(s * a.m_); }

 private:
  CMatrix m_;
};

inline double distance(const Intertwiner& a, const Intertwiner& b) {
  return operator_norm(a.matrix() - b.matrix());
}

/// allowed[v][e] iff r(e) == v.
struct IntertwinerPattern {
  std::vector<std::vector<bool>> allowed;

  std::size_t allowed_cells() const {
    std::size_t n = 0;
    for (const auto& row : allowed)
      for (bool b : row) n += b ? 1 : 0;
    return n;
  }
};

inline IntertwinerPattern pattern(const CorrespondenceContext& ctx) {
  IntertwinerPattern p;
  p.allowed.assign(ctx.vertex_count(), std::vector<bool>(ctx.edge_count(), false));
  for (std::size_t e = 0; e < ctx.edge_count(); ++e) p.allowed[ctx.graph().edge(e).rng][e] = true;
  return p;
}

/// Complex dimension Sum_{allowed (v,e)} m_v * m_{s(e)}.
inline Index pattern_dimension(const CorrespondenceContext& ctx) {
  const auto p = pattern(ctx);
  Index d = 0;
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v)
    for (std::size_t e = 0; e < ctx.edge_count(); ++e)
      if (p.allowed[v][e]) d += ctx.multiplicity(v) * ctx.edge_block(e);
  return d;
}

/// Largest operator norm of a block outside the pattern.
inline double off_pattern_norm(const CorrespondenceContext& ctx, const CMatrix& m) {
  ctx.space().require_shape(m);
  const auto p = pattern(ctx);
  double worst = 0.0;
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v)
    for (std::size_t e = 0; e < ctx.edge_count(); ++e)
      if (!p.allowed[v][e]) worst = std::max(worst, operator_norm(ctx.block(m, v, e)));
  return worst;
}

/// Intertwining relation checked on every vertex indicator.
inline bool is_intertwiner(const CorrespondenceContext& ctx, const CMatrix& m,
                           const Tolerance& tol = {}) {
  return ctx.space().contains(m, tol);
}

inline Intertwiner make_intertwiner(const IntertwinerSpace& space, const CMatrix& m,
                                    const Tolerance& tol = {}) {
  space.require_shape(m);
  if (!space.contains(m, tol))
    throw Error(ErrorCode::InvalidArgument, "matrix violates the intertwining relation");
  return Intertwiner(m);
}

inline Intertwiner make_intertwiner(const CorrespondenceContext& ctx, const CMatrix& m,
                                    const Tolerance& tol = {}) {
  return make_intertwiner(ctx.space(), m, tol);
}

/// Gaussian coefficients on the space basis, rescaled by
/// radius_cap / (|eta*| + eps).
inline Intertwiner sample_disc(const IntertwinerSpace& space, Rng& rng, double radius_cap,
                               const Tolerance& tol = {}) {
  if (!(radius_cap > 0.0 && radius_cap <= tol.radius()))
    throw Error(ErrorCode::InvalidArgument, "radius_cap must lie in (0, 1 - margin]");
  const CVector coeffs = gaussian_matrix(rng, space.dimension(), 1);
  CMatrix m = space.combine(coeffs);
  const double n = operator_norm(m);
  m *= radius_cap / (n + std::numeric_limits<double>::min());
  return Intertwiner(std::move(m));
}

inline Intertwiner sample_disc(const CorrespondenceContext& ctx, std::uint64_t seed,
                               double radius_cap, const Tolerance& tol = {}) {
  Rng rng(seed);
  return sample_disc(ctx.space(), rng, radius_cap, tol);
}

/// Orthonormal basis of the center: intertwiners b with c b = b (I_E (x) c)
/// for every c in sigma(A)'. Solved as a nullspace over the pattern basis.
inline std::vector<CMatrix> center_basis(const CorrespondenceContext& ctx, const Tolerance& tol = {}) {
  const auto& basis = ctx.space().basis();
  const auto commutant = commutant_basis(ctx);
  const Index d = static_cast<Index>(basis.size());
  const Index block = ctx.dim_h() * ctx.dim_eh();
  CMatrix system = CMatrix::Zero(block * static_cast<Index>(commutant.size()), d);
  for (std::size_t c = 0; c < commutant.size(); ++c) {
    const CMatrix ce = commutant_on_eh(ctx, commutant[c]);
    for (Index k = 0; k < d; ++k)
      system.block(static_cast<Index>(c) * block, k, block, 1) =
          vec(commutant[c] * basis[k] - basis[k] * ce);
  }
  std::vector<CMatrix> out;
  if (d == 0) return out;
  for (const CVector& x : nullspace_basis(system, tol)) out.push_back(ctx.space().combine(x));
  return out;
}

/// Loop indicators: the x in E with a.x = x.a for all a.
inline std::vector<CVector> center_of_E(const CorrespondenceContext& ctx) {
  std::vector<CVector> out;
  const Index n = static_cast<Index>(ctx.edge_count());
  for (std::size_t e = 0; e < ctx.edge_count(); ++e)
    if (ctx.graph().edge(e).is_loop()) out.push_back(CVector::Unit(n, static_cast<Index>(e)));
  return out;
}

/// Scalar identity blocks on the loop cells, normalised in Frobenius norm.
/// This is the structure the center is expected to have.
inline std::vector<CMatrix> loop_scalar_basis(const CorrespondenceContext& ctx) {
  std::vector<CMatrix> out;
  for (std::size_t e = 0; e < ctx.edge_count(); ++e) {
    const auto& edge = ctx.graph().edge(e);
    if (!edge.is_loop()) continue;
    CMatrix b = CMatrix::Zero(ctx.dim_h(), ctx.dim_eh());
    const Index m = ctx.multiplicity(edge.rng);
    ctx.block(b, edge.rng, e) = CMatrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
    out.push_back(std::move(b));
  }
  return out;
}

struct CenterDiscrepancy {
  std::size_t computed_dim = 0;
  std::size_t expected_dim = 0;
  double max_residual = 0.0;

  bool agrees(double tol) const { return computed_dim == expected_dim && max_residual <= tol; }
};

/// Compares the commutation-system center with the loop/scalar structure in
/// both directions. A disagreement is reported, never corrected.
inline CenterDiscrepancy center_structure_discrepancy(const CorrespondenceContext& ctx,
                                                      const Tolerance& tol = {}) {
  const auto computed = center_basis(ctx, tol);
  const auto expected = loop_scalar_basis(ctx);
  CenterDiscrepancy d{computed.size(), expected.size(), 0.0};
  for (const auto& b : computed) d.max_residual = std::max(d.max_residual, distance_to_span(b, expected));
  for (const auto& b : expected) d.max_residual = std::max(d.max_residual, distance_to_span(b, computed));
  return d;
}

}  // namespace discgrp
