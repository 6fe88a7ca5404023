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

// Finite-dimensional graph correspondence. A is the algebra of functions on
// the vertices, E the edge module (left action through the range map, right
// action through the source map), sigma the representation of A on
// H = (+)_v C^{m_v}. E (x) H is laid out as (+)_e H_{s(e)} in edge order.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "discgrp/linalg.hpp"
#include "discgrp/space.hpp"

namespace discgrp {

struct Edge {
  std::string name;
  std::size_t src = 0;
  std::size_t rng = 0;

  bool is_loop() const { return src == rng; }
};

class DirectedGraph {
 public:
  struct EdgeSpec {
    std::string name;
    std::string src;
    std::string rng;
  };

  DirectedGraph() = default;

  DirectedGraph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
      : vertices_(std::move(vertices)) {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (!vertex_index_.emplace(vertices_[v], v).second)
        throw Error(ErrorCode::DuplicateName, "vertex '" + vertices_[v] + "' declared twice");
    }
    std::unordered_map<std::string, std::size_t> edge_names;
    for (const auto& e : edges) {
      if (!edge_names.emplace(e.name, edges_.size()).second)
        throw Error(ErrorCode::DuplicateName, "edge '" + e.name + "' declared twice");
      edges_.push_back({e.name, require_vertex(e.src), require_vertex(e.rng)});
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_vertex(const std::string& name) const {
    if (auto v = find_vertex(name)) return *v;
    throw Error(ErrorCode::UnknownVertex, "vertex '" + name + "' is not declared");
  }

  std::optional<std::size_t> find_edge(const std::string& name) const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edges_[e].name == name) return e;
    return std::nullopt;
  }

  /// v is a source iff no edge has range v.
  bool is_source(std::size_t v) const {
    for (const auto& e : edges_)
      if (e.rng == v) return false;
    return true;
  }

  bool has_sources() const {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (is_source(v)) return true;
    return false;
  }

  bool has_loops() const {
    for (const auto& e : edges_)
      if (e.is_loop()) return true;
    return false;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
};

/// One scalar per vertex.
struct AlgebraElement {
  std::vector<Complex> values;

  static AlgebraElement constant(std::size_t vertex_count, Complex c) {
    return {std::vector<Complex>(vertex_count, c)};
  }
  static AlgebraElement indicator(std::size_t vertex_count, std::size_t v) {
    AlgebraElement a = constant(vertex_count, 0.0);
    a.values.at(v) = 1.0;
    return a;
  }
};

/// Immutable after construction.
class CorrespondenceContext {
 public:
  CorrespondenceContext(DirectedGraph graph, std::vector<int> multiplicities)
      : graph_(std::move(graph)), mult_(std::move(multiplicities)) {
    if (mult_.size() != graph_.vertex_count())
      throw Error(ErrorCode::InvalidArgument, "one multiplicity per vertex is required");
    for (std::size_t v = 0; v < mult_.size(); ++v)
      if (mult_[v] < 1)
        throw Error(ErrorCode::ZeroMultiplicity,
                    "vertex '" + graph_.vertices()[v] + "' has multiplicity < 1");
    for (int m : mult_) {
      h_offset_.push_back(dim_h_);
      dim_h_ += m;
    }
    for (const auto& e : graph_.edges()) {
      eh_offset_.push_back(dim_eh_);
      dim_eh_ += mult_[e.src];
    }
    space_ = build_space();
  }

  const DirectedGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }
  Index dim_h() const { return dim_h_; }
  Index dim_eh() const { return dim_eh_; }

  Index multiplicity(std::size_t v) const { return mult_.at(v); }
  const std::vector<int>& multiplicities() const { return mult_; }
  Index h_offset(std::size_t v) const { return h_offset_.at(v); }
  Index eh_offset(std::size_t e) const { return eh_offset_.at(e); }
  /// Size of the e-block of E (x) H, i.e. m_{s(e)}.
  Index edge_block(std::size_t e) const { return mult_[graph_.edge(e).src]; }

  /// The intertwiner space with its pattern basis and the vertex-indicator
  /// relations.
  const IntertwinerSpace& space() const { return space_; }

  /// Block (v, e) of an H x (E (x) H) operator.
  auto block(CMatrix& m, std::size_t v, std::size_t e) const {
    return m.block(h_offset(v), eh_offset(e), multiplicity(v), edge_block(e));
  }
  auto block(const CMatrix& m, std::size_t v, std::size_t e) const {
    return m.block(h_offset(v), eh_offset(e), multiplicity(v), edge_block(e));
  }

 private:
  IntertwinerSpace build_space() const;

  DirectedGraph graph_;
  std::vector<int> mult_;
  std::vector<Index> h_offset_;
  std::vector<Index> eh_offset_;
  Index dim_h_ = 0;
  Index dim_eh_ = 0;
  IntertwinerSpace space_;
};

/// Multiplicities keyed by vertex name; absent vertices default to 1.
inline CorrespondenceContext build_context(const DirectedGraph& graph,
                                           const std::map<std::string, int>& multiplicities) {
  std::vector<int> m(graph.vertex_count(), 1);
  for (const auto& [name, value] : multiplicities) m[graph.require_vertex(name)] = value;
  return {graph, std::move(m)};
}

inline void check_algebra_element(const CorrespondenceContext& ctx, const AlgebraElement& a) {
  if (a.values.size() != ctx.vertex_count())
    throw Error(ErrorCode::ShapeMismatch, "algebra element needs one value per vertex");
}

/// sigma(a): a(v) I on H_v.
inline CMatrix sigma_op(const CorrespondenceContext& ctx, const AlgebraElement& a) {
  check_algebra_element(ctx, a);
  CMatrix out = CMatrix::Zero(ctx.dim_h(), ctx.dim_h());
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v)
    out.diagonal().segment(ctx.h_offset(v), ctx.multiplicity(v)).setConstant(a.values[v]);
  return out;
}

/// phi(a) (x) I: a(r(e)) I on the e-block of E (x) H.
inline CMatrix phi_tensor_op(const CorrespondenceContext& ctx, const AlgebraElement& a) {
  check_algebra_element(ctx, a);
  CMatrix out = CMatrix::Zero(ctx.dim_eh(), ctx.dim_eh());
  for (std::size_t e = 0; e < ctx.edge_count(); ++e)
    out.diagonal()
        .segment(ctx.eh_offset(e), ctx.edge_block(e))
        .setConstant(a.values[ctx.graph().edge(e).rng]);
  return out;
}

/// Matrix units of sigma(A)' = (+)_v B(H_v); Sum_v m_v^2 elements.
inline std::vector<CMatrix> commutant_basis(const CorrespondenceContext& ctx) {
  std::vector<CMatrix> out;
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v)
    for (Index i = 0; i < ctx.multiplicity(v); ++i)
      for (Index j = 0; j < ctx.multiplicity(v); ++j) {
        CMatrix c = CMatrix::Zero(ctx.dim_h(), ctx.dim_h());
        c(ctx.h_offset(v) + i, ctx.h_offset(v) + j) = 1.0;
        out.push_back(std::move(c));
      }
  return out;
}

/// I_E (x) c for c in sigma(A)': the s(e)-block of c on each e-block.
inline CMatrix commutant_on_eh(const CorrespondenceContext& ctx, const CMatrix& c) {
  CMatrix out = CMatrix::Zero(ctx.dim_eh(), ctx.dim_eh());
  for (std::size_t e = 0; e < ctx.edge_count(); ++e) {
    const std::size_t s = ctx.graph().edge(e).src;
    out.block(ctx.eh_offset(e), ctx.eh_offset(e), ctx.edge_block(e), ctx.edge_block(e)) =
        c.block(ctx.h_offset(s), ctx.h_offset(s), ctx.multiplicity(s), ctx.multiplicity(s));
  }
  return out;
}

/// Block-diagonal membership in sigma(A)'.
inline bool in_commutant(const CorrespondenceContext& ctx, const CMatrix& c, double tol) {
  if (c.rows() != ctx.dim_h() || c.cols() != ctx.dim_h()) return false;
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v) {
    const CMatrix p = sigma_op(ctx, AlgebraElement::indicator(ctx.vertex_count(), v));
    if (operator_norm(c * p - p * c) > tol) return false;
  }
  return true;
}

inline IntertwinerSpace CorrespondenceContext::build_space() const {
  std::vector<CMatrix> left;
  std::vector<CMatrix> right;
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    const auto a = AlgebraElement::indicator(vertex_count(), v);
    left.push_back(sigma_op(*this, a));
    right.push_back(phi_tensor_op(*this, a));
  }
  // Matrix units on the allowed cells r(e) = v.
  std::vector<CMatrix> basis;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const std::size_t v = graph_.edge(e).rng;
    for (Index j = 0; j < edge_block(e); ++j)
      for (Index i = 0; i < multiplicity(v); ++i) {
        CMatrix b = CMatrix::Zero(dim_h_, dim_eh_);
        b(h_offset(v) + i, eh_offset(e) + j) = 1.0;
        basis.push_back(std::move(b));
      }
  }
  return {dim_h_, dim_eh_, std::move(left), std::move(right), std::move(basis)};
}

}  // namespace discgrp
