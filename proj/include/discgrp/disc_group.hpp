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

// Biholomorphic automorphisms of the open unit ball of intertwiners.
//
// Every automorphism is stored canonically as g = omega o g_gamma, where
// g_gamma is the Moebius involution exchanging 0 and gamma* and omega is the
// linear isometry eta* -> u eta* v*. Composition and inversion go through the
// 2x2 block transfer matrix and are re-canonicalised afterwards, so equal
// automorphisms always carry the same gamma*.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "discgrp/correspondence.hpp"
#include "discgrp/intertwiners.hpp"
#include "discgrp/random.hpp"
#include "discgrp/space.hpp"

namespace discgrp {

/// g_gamma with its defect operators cached:
///   Delta_gamma   = (I_H - gamma* gamma)^{1/2}
///   Delta_gamma*  = (I_EH - gamma gamma*)^{1/2}
/// Construction only requires |gamma*| < 1 (strict, up to abs_tol); the
/// margin policy is enforced by moebius_apply and the samplers.
class MoebiusMap {
 public:
  MoebiusMap(Intertwiner gamma_star, const Tolerance& tol = {}) : gamma_star_(std::move(gamma_star)) {
    const CMatrix& g = gamma_star_.matrix();
    const CMatrix ph = CMatrix::Identity(g.rows(), g.rows()) - g * g.adjoint();
    const CMatrix pe = CMatrix::Identity(g.cols(), g.cols()) - g.adjoint() * g;
    try {
      delta_inv_ = hermitian_inv_sqrt(ph, tol);
      delta_star_inv_ = hermitian_inv_sqrt(pe, tol);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotPositiveDefinite)
        throw Error(ErrorCode::OutsideDisc, "gamma* is not a strict contraction");
      throw;
    }
    delta_ = hermitian_sqrt(ph, tol);
    delta_star_ = hermitian_sqrt(pe, tol);
    abs_tol_ = tol.abs_tol;
  }

  const Intertwiner& gamma_star() const { return gamma_star_; }
  const CMatrix& delta() const { return delta_; }
  const CMatrix& delta_inv() const { return delta_inv_; }
  const CMatrix& delta_star() const { return delta_star_; }
  const CMatrix& delta_star_inv() const { return delta_star_inv_; }

  /// Delta_gamma (I - eta* gamma)^{-1} (gamma* - eta*) Delta_gamma*^{-1}.
  Intertwiner operator()(const Intertwiner& eta_star) const {
    const CMatrix& g = gamma_star_.matrix();
    const CMatrix& n = eta_star.matrix();
    if (n.rows() != g.rows() || n.cols() != g.cols())
      throw Error(ErrorCode::ShapeMismatch, "eta* and gamma* must have the same shape");
    if (operator_norm(n) >= 1.0) throw Error(ErrorCode::OutsideDisc, "|eta*| >= 1");
    const CMatrix resolvent = CMatrix::Identity(g.rows(), g.rows()) - n * g.adjoint();
    if (smallest_singular_value(resolvent) <= abs_tol_)
      throw Error(ErrorCode::SingularResolvent, "I - eta* gamma is numerically singular");
    return Intertwiner(delta_ * resolvent.partialPivLu().solve(g - n) * delta_star_inv_);
  }

 private:
  Intertwiner gamma_star_;
  CMatrix delta_, delta_inv_, delta_star_, delta_star_inv_;
  double abs_tol_ = 1e-10;
};

/// g_gamma(eta*) with the margin policy |gamma*| <= 1 - margin enforced.
inline Intertwiner moebius_apply(const Intertwiner& gamma_star, const Intertwiner& eta_star,
                                 const Tolerance& tol = {}) {
  if (gamma_star.norm() > tol.radius() + tol.abs_tol)
    throw Error(ErrorCode::OutsideDisc, "|gamma*| exceeds 1 - margin");
  return MoebiusMap(gamma_star, tol)(eta_star);
}

/// eta* -> u eta* v*, with `vstar` stored exactly as it multiplies.
struct AdmissibleIsometry {
  CMatrix u;
  CMatrix vstar;

  static AdmissibleIsometry identity(Index dim_h, Index dim_eh) {
    return {CMatrix::Identity(dim_h, dim_h), CMatrix::Identity(dim_eh, dim_eh)};
  }

  /// g_0 = -id as an isometry.
  static AdmissibleIsometry negation(Index dim_h, Index dim_eh) {
    return {CMatrix::Identity(dim_h, dim_h), -CMatrix::Identity(dim_eh, dim_eh)};
  }

  Intertwiner operator()(const Intertwiner& eta_star) const {
    return Intertwiner(u * eta_star.matrix() * vstar);
  }

  AdmissibleIsometry inverse() const { return {u.adjoint(), vstar.adjoint()}; }

  Index dim_h() const { return u.rows(); }
  Index dim_eh() const { return vstar.rows(); }
};

/// Canonical pair (omega, gamma*) meaning g = omega o g_gamma.
struct DiscAutomorphism {
  AdmissibleIsometry omega;
  Intertwiner gamma_star;

  /// id = (-id) o g_0.
  static DiscAutomorphism identity(Index dim_h, Index dim_eh) {
    return {AdmissibleIsometry::negation(dim_h, dim_eh), Intertwiner::zero(dim_h, dim_eh)};
  }

  /// The bare Moebius map g_gamma: the identity isometry is attached so that
  /// omega o g_gamma = g_gamma.
  static DiscAutomorphism moebius(const Intertwiner& gamma_star) {
    return {AdmissibleIsometry::identity(gamma_star.rows(), gamma_star.cols()), gamma_star};
  }

  /// omega alone. Since g_0 = -id, this is stored as (-omega, 0).
  static DiscAutomorphism isometry(const AdmissibleIsometry& omega) {
    return {AdmissibleIsometry{omega.u, -omega.vstar},
            Intertwiner::zero(omega.dim_h(), omega.dim_eh())};
  }

  Index dim_h() const { return omega.dim_h(); }
  Index dim_eh() const { return omega.dim_eh(); }
};

/// u g_gamma(eta*) v*.
inline Intertwiner apply(const DiscAutomorphism& g, const Intertwiner& eta_star,
                         const Tolerance& tol = {}) {
  return g.omega(MoebiusMap(g.gamma_star, tol)(eta_star));
}

/// Pointwise composite as a closure; used when an automorphism is only known
/// as a map.
using DiscMap = std::function<Intertwiner(const Intertwiner&)>;

inline DiscMap as_map(const DiscAutomorphism& g, const Tolerance& tol = {}) {
  MoebiusMap mg(g.gamma_star, tol);
  AdmissibleIsometry w = g.omega;
  return [mg, w](const Intertwiner& x) { return w(mg(x)); };
}

namespace detail {

/// [[D^{-1} u*, gamma* D_*^{-1} v*], [-gamma D^{-1} u*, -D_*^{-1} v*]].
/// Acts on homogeneous coordinates [I eta*] by right multiplication.
inline CMatrix transfer_matrix(const DiscAutomorphism& g, const Tolerance& tol) {
  const MoebiusMap mg(g.gamma_star, tol);
  const CMatrix& gs = g.gamma_star.matrix();
  const Index h = gs.rows();
  const Index k = gs.cols();
  const CMatrix ustar = g.omega.u.adjoint();
  CMatrix t(h + k, h + k);
  t.topLeftCorner(h, h) = mg.delta_inv() * ustar;
  t.topRightCorner(h, k) = gs * mg.delta_star_inv() * g.omega.vstar;
  t.bottomLeftCorner(k, h) = -gs.adjoint() * mg.delta_inv() * ustar;
  t.bottomRightCorner(k, k) = -mg.delta_star_inv() * g.omega.vstar;
  return t;
}

}  // namespace detail

/// Recovers the canonical (omega, gamma*) from any pseudo-unitary transfer
/// matrix T of an automorphism g:
///   gamma* = g^{-1}(0) solves [I gamma*] T = [*, 0], i.e. gamma* = -T12 T22^{-1};
///   omega  = g o g_gamma has transfer T_{g_gamma} T = diag(u*, v*).
inline DiscAutomorphism canonical_decomposition(const CMatrix& transfer, Index dim_h,
                                                const Tolerance& tol = {}) {
  require_finite(transfer, "transfer matrix");
  const Index k = transfer.rows() - dim_h;
  if (transfer.rows() != transfer.cols() || k < 0)
    throw Error(ErrorCode::ShapeMismatch, "transfer matrix must be square with an H block");
  const CMatrix t12 = transfer.topRightCorner(dim_h, k);
  const CMatrix t22 = transfer.bottomRightCorner(k, k);
  if (k > 0 && smallest_singular_value(t22) <= tol.abs_tol)
    throw Error(ErrorCode::SingularU, "T22 is not invertible");
  Intertwiner gamma_star(k > 0 ? CMatrix(-t22.transpose().partialPivLu().solve(t12.transpose()).transpose())
                               : CMatrix(dim_h, 0));
  const CMatrix m =
      detail::transfer_matrix(DiscAutomorphism::moebius(gamma_star), tol) * transfer;
  AdmissibleIsometry omega{nearest_unitary(m.topLeftCorner(dim_h, dim_h).adjoint()),
                           nearest_unitary(m.bottomRightCorner(k, k))};
  return {std::move(omega), std::move(gamma_star)};
}

/// Black-box form: the map is used only to certify g(gamma*) = 0 for the
/// gamma* read off the matrix data. Returns the decomposition and that residual.
inline std::pair<DiscAutomorphism, double> canonical_decomposition(const DiscMap& g,
                                                                   const CMatrix& transfer,
                                                                   Index dim_h,
                                                                   const Tolerance& tol = {}) {
  auto d = canonical_decomposition(transfer, dim_h, tol);
  const double residual = g(d.gamma_star).norm();
  return {std::move(d), residual};
}

/// g2 o g1. Transfer matrices multiply in reverse order: T_{g2 o g1} = T_{g1} T_{g2}.
inline DiscAutomorphism compose(const DiscAutomorphism& g2, const DiscAutomorphism& g1,
                                const Tolerance& tol = {}) {
  const CMatrix t = detail::transfer_matrix(g1, tol) * detail::transfer_matrix(g2, tol);
  return canonical_decomposition(t, g1.dim_h(), tol);
}

/// g^{-1}, through the block inverse
/// [[u D^{-1}, u gamma* D_*^{-1}], [-v gamma D^{-1}, -v D_*^{-1}]].
inline DiscAutomorphism inverse(const DiscAutomorphism& g, const Tolerance& tol = {}) {
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
  return canonical_decomposition(t, h, tol);
}

/// Extensional equality of isometries on a basis of the space.
inline double isometry_distance(const IntertwinerSpace& space, const AdmissibleIsometry& a,
                                const AdmissibleIsometry& b) {
  double worst = 0.0;
  for (const CMatrix& x : space.basis())
    worst = std::max(worst, operator_norm(a.u * x * a.vstar - b.u * x * b.vstar));
  return worst;
}

/// max(|gamma1* - gamma2*|, isometry_distance). Zero iff the canonical forms
/// describe the same automorphism.
inline double automorphism_distance(const IntertwinerSpace& space, const DiscAutomorphism& a,
                                    const DiscAutomorphism& b) {
  return std::max(distance(a.gamma_star, b.gamma_star), isometry_distance(space, a.omega, b.omega));
}

inline bool is_identity(const IntertwinerSpace& space, const DiscAutomorphism& g,
                        const Tolerance& tol = {}) {
  return automorphism_distance(space, g,
                               DiscAutomorphism::identity(g.dim_h(), g.dim_eh())) <= tol.abs_tol;
}

// ---------------------------------------------------------------------------
// Graph isometries

/// Residuals of the structure conditions on (u, v*) for a graph
/// correspondence. Block v*_{ij} maps H_{s(e_j)} -> H_{s(e_i)}.
struct IsometryConditions {
  double u_off_diagonal = 0.0;  ///< largest off-diagonal vertex block of u
  double u_unitarity = 0.0;
  double range_violation = 0.0;  ///< (1) largest v*_{ij} with r(e_i) != r(e_j)
  double row_isometry = 0.0;     ///< (2) max_i |Sum_j v*_{ij} v_{ij} - I|
  double row_orthogonality = 0.0;  ///< (3) max_{i != k} |Sum_j v*_{ij} v_{kj}|
  double preservation = 0.0;  ///< max relation residual of u b v* over the basis

  double worst() const {
    return std::max({u_off_diagonal, u_unitarity, range_violation, row_isometry,
                     row_orthogonality, preservation});
  }
  bool admissible(double tol) const { return worst() <= tol; }
};

inline IsometryConditions isometry_conditions(const CorrespondenceContext& ctx,
                                              const AdmissibleIsometry& w) {
  if (w.u.rows() != ctx.dim_h() || w.u.cols() != ctx.dim_h() || w.vstar.rows() != ctx.dim_eh() ||
      w.vstar.cols() != ctx.dim_eh())
    throw Error(ErrorCode::ShapeMismatch, "isometry data does not match the context");
  const auto& g = ctx.graph();
  IsometryConditions c;
  for (std::size_t a = 0; a < ctx.vertex_count(); ++a)
    for (std::size_t b = 0; b < ctx.vertex_count(); ++b)
      if (a != b)
        c.u_off_diagonal = std::max(
            c.u_off_diagonal,
            operator_norm(w.u.block(ctx.h_offset(a), ctx.h_offset(b), ctx.multiplicity(a),
                                    ctx.multiplicity(b))));
  c.u_unitarity = unitarity_defect(w.u);
  auto vblock = [&](std::size_t i, std::size_t j) {
    return w.vstar.block(ctx.eh_offset(i), ctx.eh_offset(j), ctx.edge_block(i), ctx.edge_block(j));
  };
  const std::size_t ne = ctx.edge_count();
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      if (g.edge(i).rng != g.edge(j).rng)
        c.range_violation = std::max(c.range_violation, operator_norm(vblock(i, j)));
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t k = 0; k < ne; ++k) {
      CMatrix acc = CMatrix::Zero(ctx.edge_block(i), ctx.edge_block(k));
      for (std::size_t j = 0; j < ne; ++j) acc += vblock(i, j) * vblock(k, j).adjoint();
      if (i == k)
        c.row_isometry = std::max(
            c.row_isometry, operator_norm(acc - CMatrix::Identity(acc.rows(), acc.cols())));
      else
        c.row_orthogonality = std::max(c.row_orthogonality, operator_norm(acc));
    }
  for (const CMatrix& b : ctx.space().basis())
    c.preservation = std::max(c.preservation, ctx.space().relation_residual(w.u * b * w.vstar));
  return c;
}

/// Basis-preservation test alone; valid for any intertwiner space.
inline double preservation_residual(const IntertwinerSpace& space, const AdmissibleIsometry& w) {
  double worst = 0.0;
  for (const CMatrix& b : space.basis())
    worst = std::max(worst, space.relation_residual(w.u * b * w.vstar));
  return worst;
}

/// Random admissible isometry: u = (+)_v Haar(m_v) and, for each range
/// vertex v, a Haar unitary on (+)_{r(e)=v} H_{s(e)} scattered into v*.
inline AdmissibleIsometry random_admissible_isometry(const CorrespondenceContext& ctx, Rng& rng) {
  AdmissibleIsometry w{CMatrix::Zero(ctx.dim_h(), ctx.dim_h()),
                       CMatrix::Zero(ctx.dim_eh(), ctx.dim_eh())};
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v)
    w.u.block(ctx.h_offset(v), ctx.h_offset(v), ctx.multiplicity(v), ctx.multiplicity(v)) =
        random_unitary(rng, ctx.multiplicity(v));
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v) {
    std::vector<std::size_t> group;
    std::vector<Index> local;
    Index n = 0;
    for (std::size_t e = 0; e < ctx.edge_count(); ++e)
      if (ctx.graph().edge(e).rng == v) {
        group.push_back(e);
        local.push_back(n);
        n += ctx.edge_block(e);
      }
    if (group.empty()) continue;
    const CMatrix q = random_unitary(rng, n);
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = 0; b < group.size(); ++b)
        w.vstar.block(ctx.eh_offset(group[a]), ctx.eh_offset(group[b]), ctx.edge_block(group[a]),
                      ctx.edge_block(group[b])) =
            q.block(local[a], local[b], ctx.edge_block(group[a]), ctx.edge_block(group[b]));
  }
  return w;
}

/// Random canonical automorphism with |gamma*| <= radius_cap.
inline DiscAutomorphism random_automorphism(const CorrespondenceContext& ctx, Rng& rng,
                                            double radius_cap, const Tolerance& tol = {}) {
  AdmissibleIsometry w = random_admissible_isometry(ctx, rng);
  Intertwiner gs = sample_disc(ctx.space(), rng, radius_cap, tol);
  return {std::move(w), std::move(gs)};
}

// ---------------------------------------------------------------------------
// Center of the group

struct CommutatorWitness {
  DiscAutomorphism h;
  Intertwiner point;
  double commutator_norm = 0.0;
  bool via_origin = false;  ///< true: g^{-1}(0) != 0 and h = g_0
};

/// An h with g o h != h o g, following the two cases of the center argument:
/// if g^{-1}(0) = gamma* != 0 take h = g_0 = -id at the point gamma*;
/// otherwise g = omega moves some point p and h = g_p.
inline CommutatorWitness noncommuting_witness(const IntertwinerSpace& space,
                                              const DiscAutomorphism& g,
                                              const Tolerance& tol = {}) {
  if (is_identity(space, g, tol)) throw Error(ErrorCode::GIsIdentity, "g is the identity");
  const Index h = g.dim_h();
  const Index k = g.dim_eh();
  CommutatorWitness w{DiscAutomorphism::identity(h, k), Intertwiner::zero(h, k), 0.0, false};
  if (g.gamma_star.norm() > tol.abs_tol) {
    w.h = DiscAutomorphism::moebius(Intertwiner::zero(h, k));
    w.point = g.gamma_star;
    w.via_origin = true;
  } else {
    double best = -1.0;
    for (const CMatrix& b : space.basis()) {
      Intertwiner p(0.5 * b / operator_norm(b));
      const double moved = distance(apply(g, p, tol), p);
      if (moved > best) {
        best = moved;
        w.point = p;
      }
    }
    w.h = DiscAutomorphism::moebius(w.point);
  }
  const Intertwiner gh = apply(g, apply(w.h, w.point, tol), tol);
  const Intertwiner hg = apply(w.h, apply(g, w.point, tol), tol);
  w.commutator_norm = distance(gh, hg);
  return w;
}

// ---------------------------------------------------------------------------
// Hardy-algebra automorphisms

struct HardyCheck {
  double center_residual = 0.0;  ///< distance of gamma* from span(center)
  double form_residual = 0.0;    ///< max_b |omega(b) - b (u_E (x) I)|
  double unitarity = 0.0;        ///< |u_E u_E* - I|
  double center_leak = 0.0;      ///< largest u_E entry moving a loop off the loops
  CMatrix u_edge;                ///< recovered u_E on edge coordinates
  bool ok = false;
};

/// Tests whether g has the form g(eta*) = g_gamma(eta*) (u_E (x) I_H) with
/// gamma* central and u_E a unitary on E preserving Z(E). u_E is recovered by
/// least squares over the entries with s(e_i) = s(e_j).
inline HardyCheck hardy_check(const CorrespondenceContext& ctx, const DiscAutomorphism& g,
                              const Tolerance& tol = {}) {
  HardyCheck out;
  const double accept = static_cast<double>(ctx.dim_h() + ctx.dim_eh()) * tol.abs_tol;
  out.center_residual = distance_to_span(g.gamma_star.matrix(), center_basis(ctx, tol));

  const auto& graph = ctx.graph();
  const std::size_t ne = ctx.edge_count();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      if (graph.edge(i).src == graph.edge(j).src) cells.emplace_back(i, j);
  auto lifted = [&](std::size_t i, std::size_t j) {
    CMatrix m = CMatrix::Zero(ctx.dim_eh(), ctx.dim_eh());
    m.block(ctx.eh_offset(i), ctx.eh_offset(j), ctx.edge_block(i), ctx.edge_block(j)).setIdentity();
    return m;
  };
  const auto& basis = ctx.space().basis();
  const Index block = ctx.dim_h() * ctx.dim_eh();
  const Index rows = block * static_cast<Index>(basis.size());
  out.u_edge = CMatrix::Zero(static_cast<Index>(ne), static_cast<Index>(ne));
  if (rows > 0 && !cells.empty()) {
    CMatrix a(rows, static_cast<Index>(cells.size()));
    CVector rhs(rows);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const CMatrix l = lifted(cells[c].first, cells[c].second);
      for (std::size_t b = 0; b < basis.size(); ++b)
        a.block(static_cast<Index>(b) * block, static_cast<Index>(c), block, 1) = vec(basis[b] * l);
    }
    for (std::size_t b = 0; b < basis.size(); ++b)
      rhs.segment(static_cast<Index>(b) * block, block) = vec(g.omega.u * basis[b] * g.omega.vstar);
    const CVector x = a.completeOrthogonalDecomposition().solve(rhs);
    for (std::size_t c = 0; c < cells.size(); ++c)
      out.u_edge(static_cast<Index>(cells[c].first), static_cast<Index>(cells[c].second)) = x(static_cast<Index>(c));
  }
  CMatrix lift = CMatrix::Zero(ctx.dim_eh(), ctx.dim_eh());
  for (const auto& [i, j] : cells)
    lift += out.u_edge(static_cast<Index>(i), static_cast<Index>(j)) * lifted(i, j);
  for (const CMatrix& b : basis)
    out.form_residual =
        std::max(out.form_residual, operator_norm(g.omega.u * b * g.omega.vstar - b * lift));
  out.unitarity = unitarity_defect(out.u_edge);
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      if (graph.edge(j).is_loop() && !graph.edge(i).is_loop())
        out.center_leak = std::max(out.center_leak, std::abs(out.u_edge(static_cast<Index>(i), static_cast<Index>(j))));
  out.ok = out.center_residual <= accept && out.form_residual <= accept &&
           out.unitarity <= accept && out.center_leak <= accept;
  return out;
}

inline bool implements_hardy_automorphism(const CorrespondenceContext& ctx,
                                          const DiscAutomorphism& g, const Tolerance& tol = {}) {
  return hardy_check(ctx, g, tol).ok;
}

// ---------------------------------------------------------------------------
// Normality

struct NormalityWitness {
  enum class Kind {
    CenterBreaking,       ///< omega(gamma*) leaves the central disc
    IsometriesNotNormal,  ///< loop-free graph: g_gamma o (-id) o g_gamma moves 0
    Inconclusive,         ///< trial cap exhausted without a witness
  };
  Kind kind = Kind::Inconclusive;
  AdmissibleIsometry omega;
  Intertwiner gamma_star;
  /// CenterBreaking: distance of (omega o g_gamma o omega^{-1})(0) from
  /// span(center). IsometriesNotNormal: |g_gamma(-gamma*)|.
  double certificate = 0.0;
  int trials = 0;
};

/// Searches for a certificate that Aut(H^inf(E)) is not normal in the disc
/// automorphism group. Requires at least one edge and some multiplicity >= 2.
inline NormalityWitness normality_witness(const CorrespondenceContext& ctx, std::uint64_t seed,
                                          const Tolerance& tol = {}, int trial_cap = 500,
                                          double min_certificate = 1e-3) {
  bool big = false;
  for (int m : ctx.multiplicities()) big = big || m >= 2;
  if (!big) throw Error(ErrorCode::HypothesesNotMet, "every vertex has multiplicity 1");
  if (ctx.edge_count() == 0) throw Error(ErrorCode::HypothesesNotMet, "graph has no edges");

  Rng rng(seed);
  const auto center = center_basis(ctx, tol);
  NormalityWitness out;
  if (center.empty()) {
    out.kind = NormalityWitness::Kind::IsometriesNotNormal;
    out.omega = AdmissibleIsometry::negation(ctx.dim_h(), ctx.dim_eh());
    out.gamma_star = sample_disc(ctx.space(), rng, 0.5, tol);
    // g_gamma o omega o g_gamma evaluated at 0.
    const MoebiusMap mg(out.gamma_star, tol);
    out.certificate = mg(out.omega(mg(Intertwiner::zero(ctx.dim_h(), ctx.dim_eh())))).norm();
    out.trials = 1;
    return out;
  }
  for (int t = 1; t <= trial_cap; ++t) {
    const CVector c = gaussian_matrix(rng, static_cast<Index>(center.size()), 1);
    CMatrix gs = CMatrix::Zero(ctx.dim_h(), ctx.dim_eh());
    for (std::size_t k = 0; k < center.size(); ++k) gs += c(static_cast<Index>(k)) * center[k];
    gs *= 0.5 / operator_norm(gs);
    const AdmissibleIsometry w = random_admissible_isometry(ctx, rng);
    const Intertwiner gamma_star(gs);
    // (omega o g_gamma o omega^{-1})(0), evaluated as maps.
    const Intertwiner moved = w(MoebiusMap(gamma_star, tol)(w.inverse()(Intertwiner::zero(ctx.dim_h(), ctx.dim_eh()))));
    const double d = distance_to_span(moved.matrix(), center);
    out.trials = t;
    if (d > min_certificate) {
      out.kind = NormalityWitness::Kind::CenterBreaking;
      out.omega = w;
      out.gamma_star = gamma_star;
      out.certificate = d;
      return out;
    }
  }
  out.kind = NormalityWitness::Kind::Inconclusive;
  return out;
}

}  // namespace discgrp
