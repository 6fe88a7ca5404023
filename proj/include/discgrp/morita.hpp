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

// Morita transport between a graph correspondence (F over B) and the
// companion correspondence (E over A) built from an equivalence bimodule X.
//
// Index maps (all orderings follow the graph's vertex/edge order):
//   B = functions on vertices, A = (+)_v M_{k_v}
//   X       = (+)_v C^{k_v}                 A acts by matrices, B by b(v)
//   E       = X (x)_B F (x)_B X~ = (+)_e M_{k_r(e) x k_s(e)}
//   K       = X (x)_B H = (+)_v C^{k_v} (x) H_v           index (v, i, h)
//   E (x) K = (+)_e C^{k_r(e)} (x) H_s(e)                  index (e, i, h)
//   X (x)_B (F (x) H) = (+)_v C^{k_v} (x) [(+)_{r(e)=v} H_s(e)]   index (v, i, e, h)
// Balanced tensor products keep only the matching vertex components, so W is
// the coordinate permutation (e, i, h) -> (r(e), i, e, h). The equivalence
// X~ (x)_A X = B is realised with the unit vector f_v = e_0 in C^{k_v}.

#pragma once

#include <cstdint>
#include <vector>

#include "discgrp/disc_group.hpp"

namespace discgrp {

class MoritaContext {
 public:
  MoritaContext(CorrespondenceContext source, std::vector<int> ranks, const Tolerance& tol = {})
      : source_(std::move(source)), ranks_(std::move(ranks)) {
    const std::size_t nv = source_.vertex_count();
    const std::size_t ne = source_.edge_count();
    if (ranks_.size() != nv) throw Error(ErrorCode::InvalidArgument, "one rank per vertex is required");
    for (std::size_t v = 0; v < nv; ++v)
      if (ranks_[v] < 1)
        throw Error(ErrorCode::RankZero,
                    "vertex '" + source_.graph().vertices()[v] + "' has rank < 1; X is not full");
    const auto& g = source_.graph();
    for (std::size_t v = 0; v < nv; ++v) {
      k_off_.push_back(dim_k_);
      dim_k_ += rank(v) * source_.multiplicity(v);
    }
    for (std::size_t e = 0; e < ne; ++e) {
      ek_off_.push_back(dim_ek_);
      dim_ek_ += rank(g.edge(e).rng) * source_.edge_block(e);
    }
    // X (x)_B (F (x) H), grouped by range vertex.
    in_width_.assign(nv, 0);
    pos_in_group_.assign(ne, 0);
    for (std::size_t e = 0; e < ne; ++e) {
      const std::size_t v = g.edge(e).rng;
      pos_in_group_[e] = in_width_[v];
      in_width_[v] += source_.edge_block(e);
    }
    Index acc = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      xf_off_.push_back(acc);
      acc += rank(v) * in_width_[v];
    }
    if (acc != dim_ek_) throw Error(ErrorCode::ShapeMismatch, "tensor bookkeeping mismatch");

    // W (x) I_H and the module-level W.
    w_h_ = CMatrix::Zero(dim_ek_, dim_ek_);
    w_perm_.assign(static_cast<std::size_t>(dim_ek_), 0);
    for (std::size_t e = 0; e < ne; ++e) {
      const std::size_t v = g.edge(e).rng;
      const Index m = source_.edge_block(e);
      for (Index i = 0; i < rank(v); ++i)
        for (Index h = 0; h < m; ++h) {
          const Index from = ek_off_[e] + i * m + h;
          const Index to = xf_off_[v] + i * in_width_[v] + pos_in_group_[e] + h;
          w_h_(to, from) = 1.0;
          w_perm_[static_cast<std::size_t>(from)] = to;
        }
    }
    build_module_w();
    build_target(tol);

    contraction_h_ = CMatrix::Zero(dim_k_, source_.dim_h());
    for (std::size_t v = 0; v < nv; ++v)
      contraction_h_.block(k_off_[v], source_.h_offset(v), rank(v) * source_.multiplicity(v),
                           source_.multiplicity(v)) =
          kron(CVector::Unit(rank(v), 0), CMatrix::Identity(source_.multiplicity(v), source_.multiplicity(v)));
    contraction_eh_ = CMatrix::Zero(dim_ek_, source_.dim_eh());
    for (std::size_t e = 0; e < ne; ++e) {
      const Index k = rank(g.edge(e).rng);
      const Index m = source_.edge_block(e);
      contraction_eh_.block(ek_off_[e], source_.eh_offset(e), k * m, m) =
          kron(CVector::Unit(k, 0), CMatrix::Identity(m, m));
    }
  }

  const CorrespondenceContext& source() const { return source_; }
  const std::vector<int>& ranks() const { return ranks_; }
  Index rank(std::size_t v) const { return ranks_.at(v); }

  Index dim_k() const { return dim_k_; }
  Index dim_ek() const { return dim_ek_; }
  Index k_offset(std::size_t v) const { return k_off_.at(v); }
  Index ek_offset(std::size_t e) const { return ek_off_.at(e); }

  /// Intertwiners for (E, sigma^X), solved from the relations.
  const IntertwinerSpace& target() const { return target_; }

  /// W (x) I_H : E (x) K -> X (x)_B (F (x) H), a permutation matrix.
  const CMatrix& w_h() const { return w_h_; }
  /// Image index of each E (x) K coordinate under W (x) I_H.
  const std::vector<Index>& w_permutation() const { return w_perm_; }

  /// W : E (x)_A X -> X (x)_B F on (+)_e C^{k_r(e)}.
  const CMatrix& w_module() const { return w_mod_; }

  /// Left A action and right B action on E (x)_A X (first) and X (x)_B F
  /// (second), for a matrix unit of A or a vertex indicator of B.
  std::pair<CMatrix, CMatrix> module_left(std::size_t v, Index i, Index j) const;
  std::pair<CMatrix, CMatrix> module_right(std::size_t v) const;

  /// X~ (x)_A K ~= H, realised as the isometry H -> K, h_v -> f_v (x) h_v.
  const CMatrix& contraction_h() const { return contraction_h_; }
  /// (W' (x) I_H) followed by the X~ identification, as the isometry
  /// F (x) H -> E (x) K.
  const CMatrix& contraction_eh() const { return contraction_eh_; }

  /// I_X (x) eta* : X (x)_B (F (x) H) -> X (x)_B H.
  CMatrix ix_tensor(const CMatrix& eta) const {
    source_.space().require_shape(eta);
    CMatrix out = CMatrix::Zero(dim_k_, dim_ek_);
    const auto& g = source_.graph();
    for (std::size_t v = 0; v < source_.vertex_count(); ++v) {
      CMatrix row = CMatrix::Zero(source_.multiplicity(v), in_width_[v]);
      for (std::size_t e = 0; e < source_.edge_count(); ++e)
        if (g.edge(e).rng == v)
          row.middleCols(pos_in_group_[e], source_.edge_block(e)) = source_.block(eta, v, e);
      out.block(k_off_[v], xf_off_[v], rank(v) * source_.multiplicity(v), rank(v) * in_width_[v]) =
          kron(CMatrix::Identity(rank(v), rank(v)), row);
    }
    return out;
  }

  /// I_X (x) u for u in sigma(B)' (block-diagonal).
  CMatrix lift_h(const CMatrix& u) const {
    CMatrix out = CMatrix::Zero(dim_k_, dim_k_);
    for (std::size_t v = 0; v < source_.vertex_count(); ++v) {
      const Index m = source_.multiplicity(v);
      out.block(k_off_[v], k_off_[v], rank(v) * m, rank(v) * m) =
          kron(CMatrix::Identity(rank(v), rank(v)), u.block(source_.h_offset(v), source_.h_offset(v), m, m));
    }
    return out;
  }

  /// W* (I_X (x) v*) W for v* commuting with phi(B) (x) I.
  CMatrix lift_eh(const CMatrix& vstar) const {
    const auto& g = source_.graph();
    CMatrix ixv = CMatrix::Zero(dim_ek_, dim_ek_);
    for (std::size_t v = 0; v < source_.vertex_count(); ++v) {
      CMatrix grp = CMatrix::Zero(in_width_[v], in_width_[v]);
      for (std::size_t a = 0; a < source_.edge_count(); ++a)
        for (std::size_t b = 0; b < source_.edge_count(); ++b)
          if (g.edge(a).rng == v && g.edge(b).rng == v)
            grp.block(pos_in_group_[a], pos_in_group_[b], source_.edge_block(a), source_.edge_block(b)) =
                vstar.block(source_.eh_offset(a), source_.eh_offset(b), source_.edge_block(a),
                            source_.edge_block(b));
      ixv.block(xf_off_[v], xf_off_[v], rank(v) * in_width_[v], rank(v) * in_width_[v]) =
          kron(CMatrix::Identity(rank(v), rank(v)), grp);
    }
    return w_h_.adjoint() * ixv * w_h_;
  }

  /// sigma^X(a) for a = (a_v) in (+)_v M_{k_v}.
  CMatrix induced_rep(const std::vector<CMatrix>& a) const {
    if (a.size() != source_.vertex_count())
      throw Error(ErrorCode::ShapeMismatch, "one k_v x k_v block per vertex is required");
    CMatrix out = CMatrix::Zero(dim_k_, dim_k_);
    for (std::size_t v = 0; v < source_.vertex_count(); ++v) {
      if (a[v].rows() != rank(v) || a[v].cols() != rank(v))
        throw Error(ErrorCode::ShapeMismatch, "block size differs from the rank");
      const Index m = source_.multiplicity(v);
      out.block(k_off_[v], k_off_[v], rank(v) * m, rank(v) * m) = kron(a[v], CMatrix::Identity(m, m));
    }
    return out;
  }

  /// phi_E(a) (x) I on E (x) K.
  CMatrix phi_e_tensor(const std::vector<CMatrix>& a) const {
    const auto& g = source_.graph();
    CMatrix out = CMatrix::Zero(dim_ek_, dim_ek_);
    for (std::size_t e = 0; e < source_.edge_count(); ++e) {
      const std::size_t r = g.edge(e).rng;
      const Index m = source_.edge_block(e);
      out.block(ek_off_[e], ek_off_[e], rank(r) * m, rank(r) * m) = kron(a.at(r), CMatrix::Identity(m, m));
    }
    return out;
  }

  /// Matrix units E^{(v)}_{ij} of A.
  std::vector<std::vector<CMatrix>> algebra_units() const {
    std::vector<std::vector<CMatrix>> out;
    for (std::size_t v = 0; v < source_.vertex_count(); ++v)
      for (Index i = 0; i < rank(v); ++i)
        for (Index j = 0; j < rank(v); ++j) {
          std::vector<CMatrix> a;
          for (std::size_t w = 0; w < source_.vertex_count(); ++w) a.push_back(CMatrix::Zero(rank(w), rank(w)));
          a[v](i, j) = 1.0;
          out.push_back(std::move(a));
        }
    return out;
  }

 private:
  void build_module_w();
  void build_target(const Tolerance& tol);

  CorrespondenceContext source_;
  std::vector<int> ranks_;
  std::vector<Index> k_off_, ek_off_, xf_off_, in_width_, pos_in_group_;
  Index dim_k_ = 0;
  Index dim_ek_ = 0;
  CMatrix w_h_;
  std::vector<Index> w_perm_;
  CMatrix w_mod_;
  std::vector<Index> mod_off_e_, mod_off_v_;
  IntertwinerSpace target_;
  CMatrix contraction_h_;
  CMatrix contraction_eh_;
};

inline void MoritaContext::build_module_w() {
  const auto& g = source_.graph();
  const std::size_t ne = source_.edge_count();
  std::vector<Index> count(source_.vertex_count(), 0);
  std::vector<Index> pos(ne, 0);
  for (std::size_t e = 0; e < ne; ++e) pos[e] = count[g.edge(e).rng]++;
  Index n = 0;
  for (std::size_t e = 0; e < ne; ++e) {
    mod_off_e_.push_back(n);
    n += rank(g.edge(e).rng);
  }
  Index acc = 0;
  for (std::size_t v = 0; v < source_.vertex_count(); ++v) {
    mod_off_v_.push_back(acc);
    acc += rank(v) * count[v];
  }
  w_mod_ = CMatrix::Zero(n, n);
  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t v = g.edge(e).rng;
    for (Index i = 0; i < rank(v); ++i) w_mod_(mod_off_v_[v] + i * count[v] + pos[e], mod_off_e_[e] + i) = 1.0;
  }
}

inline std::pair<CMatrix, CMatrix> MoritaContext::module_left(std::size_t v, Index i, Index j) const {
  const auto& g = source_.graph();
  const Index n = w_mod_.rows();
  CMatrix on_ex = CMatrix::Zero(n, n);
  CMatrix on_xf = CMatrix::Zero(n, n);
  CMatrix unit = CMatrix::Zero(rank(v), rank(v));
  unit(i, j) = 1.0;
  Index count = 0;
  for (std::size_t e = 0; e < source_.edge_count(); ++e)
    if (g.edge(e).rng == v) {
      on_ex.block(mod_off_e_[e], mod_off_e_[e], rank(v), rank(v)) = unit;
      ++count;
    }
  if (count > 0)
    on_xf.block(mod_off_v_[v], mod_off_v_[v], rank(v) * count, rank(v) * count) =
        kron(unit, CMatrix::Identity(count, count));
  return {on_ex, on_xf};
}

inline std::pair<CMatrix, CMatrix> MoritaContext::module_right(std::size_t v) const {
  const auto& g = source_.graph();
  const Index n = w_mod_.rows();
  CMatrix on_ex = CMatrix::Zero(n, n);
  for (std::size_t e = 0; e < source_.edge_count(); ++e)
    if (g.edge(e).src == v)
      on_ex.block(mod_off_e_[e], mod_off_e_[e], rank(g.edge(e).rng), rank(g.edge(e).rng)).setIdentity();
  // b acts through s(e) on both sides; transport the diagonal through W.
  CMatrix on_xf = CMatrix::Zero(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (w_mod_(r, c) != Complex(0.0)) on_xf(r, r) = on_ex(c, c);
  return {on_ex, on_xf};
}

inline void MoritaContext::build_target(const Tolerance& tol) {
  std::vector<CMatrix> left;
  std::vector<CMatrix> right;
  for (const auto& a : algebra_units()) {
    left.push_back(induced_rep(a));
    right.push_back(phi_e_tensor(a));
  }
  // Central projections of A force zero outside the cells (r(e), e); solve
  // the remaining matrix-unit relations cell by cell.
  const auto& g = source_.graph();
  std::vector<CMatrix> basis;
  for (std::size_t e = 0; e < source_.edge_count(); ++e) {
    const std::size_t v = g.edge(e).rng;
    const Index rows = rank(v) * source_.multiplicity(v);
    const Index cols = rank(v) * source_.edge_block(e);
    std::vector<CMatrix> l;
    std::vector<CMatrix> r;
    for (std::size_t k = 0; k < left.size(); ++k) {
      l.push_back(left[k].block(k_off_[v], k_off_[v], rows, rows));
      r.push_back(right[k].block(ek_off_[e], ek_off_[e], cols, cols));
    }
    const CMatrix system = IntertwinerSpace::relation_matrix(rows, cols, l, r);
    for (const CVector& x : nullspace_basis(system, tol)) {
      CMatrix b = CMatrix::Zero(dim_k_, dim_ek_);
      b.block(k_off_[v], ek_off_[e], rows, cols) = unvec(x, rows, cols);
      basis.push_back(std::move(b));
    }
  }
  target_ = IntertwinerSpace(dim_k_, dim_ek_, std::move(left), std::move(right), std::move(basis));
}

/// Checks that rank 0 is rejected and builds the canonical companion.
inline MoritaContext build_morita(const CorrespondenceContext& source, const std::vector<int>& ranks,
                                  const Tolerance& tol = {}) {
  return {source, ranks, tol};
}

/// sigma^X(a) for a central element given by one scalar per vertex.
inline CMatrix induced_rep(const MoritaContext& m, const AlgebraElement& a) {
  check_algebra_element(m.source(), a);
  std::vector<CMatrix> blocks;
  for (std::size_t v = 0; v < m.source().vertex_count(); ++v)
    blocks.push_back(a.values[v] * CMatrix::Identity(m.rank(v), m.rank(v)));
  return m.induced_rep(blocks);
}

/// eta*^X = (I_X (x) eta*)(W (x) I_H).
inline Intertwiner transport(const MoritaContext& m, const Intertwiner& eta_star) {
  return Intertwiner(m.ix_tensor(eta_star.matrix()) * m.w_h());
}

/// Reverse transport (I_X~ (x) zeta)(W' (x) I_H).
inline Intertwiner reverse_transport(const MoritaContext& m, const Intertwiner& zeta) {
  m.target().require_shape(zeta.matrix());
  return Intertwiner(m.contraction_h().adjoint() * zeta.matrix() * m.contraction_eh());
}

/// F(g): (I_X (x) eta*)(W (x) I) -> (I_X (x) g(eta*))(W (x) I), carried
/// structurally as (I_X (x) u, W*(I_X (x) v*)W, gamma*^X).
inline DiscAutomorphism functor_F(const MoritaContext& m, const DiscAutomorphism& g) {
  return {AdmissibleIsometry{m.lift_h(g.omega.u), m.lift_eh(g.omega.vstar)},
          transport(m, g.gamma_star)};
}

/// G(g) for an automorphism of the E-side disc whose (u, v*) commute with
/// the A-actions (every E-side isometry has such a representative).
inline DiscAutomorphism functor_G(const MoritaContext& m, const DiscAutomorphism& g,
                                  const Tolerance& tol = {}) {
  const auto& t = m.target();
  for (std::size_t k = 0; k < t.left().size(); ++k) {
    if (operator_norm(g.omega.u * t.left()[k] - t.left()[k] * g.omega.u) > tol.abs_tol ||
        operator_norm(g.omega.vstar * t.right()[k] - t.right()[k] * g.omega.vstar) > tol.abs_tol)
      throw Error(ErrorCode::NotInCommutant, "E-side isometry data does not commute with A");
  }
  return {AdmissibleIsometry{m.contraction_h().adjoint() * g.omega.u * m.contraction_h(),
                             m.contraction_eh().adjoint() * g.omega.vstar * m.contraction_eh()},
          reverse_transport(m, g.gamma_star)};
}

/// transport o g o transport^{-1} as a closure (transport^{-1} via W').
inline DiscMap conjugated_F(const MoritaContext& m, const DiscAutomorphism& g, const Tolerance& tol = {}) {
  DiscMap gm = as_map(g, tol);
  return [&m, gm](const Intertwiner& z) { return transport(m, gm(reverse_transport(m, z))); };
}

inline DiscMap conjugated_G(const MoritaContext& m, const DiscAutomorphism& g, const Tolerance& tol = {}) {
  DiscMap gm = as_map(g, tol);
  return [&m, gm](const Intertwiner& x) { return reverse_transport(m, gm(transport(m, x))); };
}

/// Random E-side automorphism with commutant (u, v*) and a gamma* drawn
/// directly from the target basis.
inline DiscAutomorphism random_target_automorphism(const MoritaContext& m, Rng& rng, double radius_cap,
                                                   const Tolerance& tol = {}) {
  const AdmissibleIsometry w = random_admissible_isometry(m.source(), rng);
  Intertwiner gs = sample_disc(m.target(), rng, radius_cap, tol);
  return {AdmissibleIsometry{m.lift_h(w.u), m.lift_eh(w.vstar)}, std::move(gs)};
}

struct NaturalityDefect {
  double epsilon = 0.0;
  double lambda = 0.0;
};

/// Both squares evaluated at eta1* and eta2* = g(eta1*):
///   epsilon: eps o g  vs  (G o F)(g) o eps, with eps the object map of G o F;
///   lambda : lam o (F o G)(g')  vs  g' o lam for g' = F(g), with lam the
///            inverse of the object map of F o G, computed in target
///            coordinates.
inline NaturalityDefect naturality_defect(const MoritaContext& m, const DiscAutomorphism& g,
                                          const Intertwiner& eta1, const Tolerance& tol = {}) {
  NaturalityDefect out;
  const Intertwiner eta2 = apply(g, eta1, tol);
  auto eps = [&](const Intertwiner& x) { return reverse_transport(m, transport(m, x)); };
  const DiscAutomorphism gf = functor_G(m, functor_F(m, g), tol);
  for (const Intertwiner& p : {eta1, eta2})
    out.epsilon = std::max(out.epsilon, distance(eps(apply(g, p, tol)), apply(gf, eps(p), tol)));

  const auto& t = m.target();
  const Index d = t.dimension();
  CMatrix fg(d, d);
  for (Index k = 0; k < d; ++k)
    fg.col(k) = t.coordinates(transport(m, reverse_transport(m, Intertwiner(t.basis()[k]))).matrix());
  const auto fg_lu = fg.fullPivLu();
  auto lam = [&](const Intertwiner& x) { return Intertwiner(t.combine(fg_lu.solve(t.coordinates(x.matrix())))); };
  auto fg_obj = [&](const Intertwiner& x) { return transport(m, reverse_transport(m, x)); };

  const DiscAutomorphism ge = functor_F(m, g);
  const DiscAutomorphism fg_ge = functor_F(m, functor_G(m, ge, tol));
  for (const Intertwiner& p : {transport(m, eta1), transport(m, eta2)}) {
    const Intertwiner start = fg_obj(p);
    out.lambda = std::max(out.lambda, distance(lam(apply(fg_ge, start, tol)), apply(ge, lam(start), tol)));
  }
  return out;
}

}  // namespace discgrp
