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

#include <gtest/gtest.h>

#include "discgrp/correspondence.hpp"
#include "discgrp/intertwiners.hpp"

namespace discgrp {
namespace {

CorrespondenceContext two_vertex() {
  return {DirectedGraph({"v1", "v2"}, {{"e1", "v1", "v1"}, {"e2", "v1", "v2"}}), {2, 1}};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Graph, Lookup) {
  const DirectedGraph g({"a", "b"}, {{"x", "a", "b"}, {"y", "b", "b"}});
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(*g.find_vertex("b"), 1u);
  EXPECT_FALSE(g.find_vertex("c").has_value());
  EXPECT_EQ(*g.find_edge("y"), 1u);
  EXPECT_TRUE(g.is_source(0));
  EXPECT_FALSE(g.is_source(1));
  EXPECT_TRUE(g.has_sources());
  EXPECT_TRUE(g.has_loops());
  EXPECT_TRUE(g.edge(1).is_loop());
}

TEST(Graph, Errors) {
  EXPECT_EQ(code_of([] { DirectedGraph({"a", "a"}, {}); }), ErrorCode::DuplicateName);
  EXPECT_EQ(code_of([] { DirectedGraph({"a"}, {{"x", "a", "a"}, {"x", "a", "a"}}); }), ErrorCode::DuplicateName);
  EXPECT_EQ(code_of([] { DirectedGraph({"a"}, {{"x", "a", "zz"}}); }), ErrorCode::UnknownVertex);
  const DirectedGraph g({"a"}, {{"x", "a", "a"}});
  EXPECT_EQ(code_of([&] { CorrespondenceContext(g, {0}); }), ErrorCode::ZeroMultiplicity);
  EXPECT_EQ(code_of([&] { build_context(g, {{"nope", 2}}); }), ErrorCode::UnknownVertex);
}

TEST(Context, TwoVertexDimensions) {
  const auto ctx = two_vertex();
  EXPECT_EQ(ctx.dim_h(), 3);
  EXPECT_EQ(ctx.dim_eh(), 4);  // both edges start at v1 (m = 2)
  EXPECT_EQ(ctx.space().dimension(), 6);
  EXPECT_EQ(pattern_dimension(ctx), 6);
  const auto p = pattern(ctx);
  EXPECT_TRUE(p.allowed[0][0]);
  EXPECT_FALSE(p.allowed[0][1]);
  EXPECT_FALSE(p.allowed[1][0]);
  EXPECT_TRUE(p.allowed[1][1]);
  EXPECT_EQ(p.allowed_cells(), 2u);
}

TEST(Context, DefaultMultiplicityIsOne) {
  const DirectedGraph g({"a", "b"}, {{"x", "a", "b"}});
  const auto ctx = build_context(g, {{"a", 3}});
  EXPECT_EQ(ctx.multiplicity(0), 3);
  EXPECT_EQ(ctx.multiplicity(1), 1);
}

TEST(Context, Actions) {
  const auto ctx = two_vertex();
  const AlgebraElement a{{Complex(2.0), Complex(-1.0)}};
  const CMatrix s = sigma_op(ctx, a);
  EXPECT_EQ(s(0, 0), Complex(2.0));
  EXPECT_EQ(s(1, 1), Complex(2.0));
  EXPECT_EQ(s(2, 2), Complex(-1.0));
  const CMatrix f = phi_tensor_op(ctx, a);
  // e1-block gets a(r(e1)) = a(v1), e2-block gets a(v2).
  EXPECT_EQ(f(0, 0), Complex(2.0));
  EXPECT_EQ(f(1, 1), Complex(2.0));
  EXPECT_EQ(f(2, 2), Complex(-1.0));
  EXPECT_EQ(f(3, 3), Complex(-1.0));
  EXPECT_LT(operator_norm(sigma_op(ctx, AlgebraElement::constant(2, 1.0)) - CMatrix::Identity(3, 3)), 1e-15);
  EXPECT_EQ(code_of([&] { sigma_op(ctx, AlgebraElement{{1.0}}); }), ErrorCode::ShapeMismatch);
}

// Oracle: the pattern basis spans exactly the nullspace of the relation
// system built from every vertex indicator.
TEST(Context, PatternMatchesRelationNullspace) {
  for (const auto& ctx : {two_vertex(),
                          CorrespondenceContext(DirectedGraph({"p", "q", "r"}, {{"a", "p", "q"}, {"b", "q", "r"},
                                                                             {"c", "r", "p"}, {"d", "p", "p"}}),
                                                {2, 3, 1})}) {
    const auto& sp = ctx.space();
    const auto solved = IntertwinerSpace::from_relations(ctx.dim_h(), ctx.dim_eh(), sp.left(), sp.right());
    EXPECT_EQ(solved.dimension(), sp.dimension());
    for (const CMatrix& b : solved.basis()) EXPECT_LT(distance_to_span(b, sp.basis()), 1e-12);
    for (const CMatrix& b : sp.basis()) EXPECT_LT(distance_to_span(b, solved.basis()), 1e-12);
  }
}

TEST(Context, Commutant) {
  const auto ctx = two_vertex();
  const auto basis = commutant_basis(ctx);
  EXPECT_EQ(basis.size(), 5u);  // 2^2 + 1^2
  for (const auto& c : basis) EXPECT_TRUE(in_commutant(ctx, c, 1e-12));
  CMatrix off = CMatrix::Zero(3, 3);
  off(0, 2) = 1.0;
  EXPECT_FALSE(in_commutant(ctx, off, 1e-12));
  // I_E (x) c uses the source block: both edges start at v1.
  const CMatrix ce = commutant_on_eh(ctx, basis[1]);
  EXPECT_EQ(ce(0, 1), Complex(1.0));
  EXPECT_EQ(ce(2, 3), Complex(1.0));
}

}  // namespace
}  // namespace discgrp
