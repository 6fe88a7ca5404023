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

#include <functional>

#include <gtest/gtest.h>

#include "discgrp/hardy_eval.hpp"

namespace discgrp {
namespace {

CorrespondenceContext two_vertex() {
  return {DirectedGraph({"v1", "v2"}, {{"e1", "v1", "v1"}, {"e2", "v1", "v2"}}), {2, 1}};
}
CorrespondenceContext scalar() { return {DirectedGraph({"v"}, {{"e", "v", "v"}}), {1}}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Fock, ScalarShift) {
  const auto ctx = scalar();
  const FockTruncation ft(ctx, 2);
  EXPECT_EQ(ft.dimension(), 3);
  CVector xi(1);
  xi << 1.0;
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(1, 0) = 1.0;
  expect(2, 1) = 1.0;
  EXPECT_EQ(operator_norm(creation_matrix(ft, xi) - expect), 0.0);
  EXPECT_EQ(operator_norm(creation_matrix(ft, CVector::Zero(1))), 0.0);
  EXPECT_EQ(code_of([&] { creation_matrix(FockTruncation(ctx, 0), xi); }), ErrorCode::InvalidArgument);
}

// Oracle: dimension of level n is the number of admissible paths of length n
// weighted by m_{s(last)}, enumerated here by brute force over all words.
TEST(Fock, LevelDimensions) {
  const auto ctx = two_vertex();
  const FockTruncation ft(ctx, 3);
  Index total = ctx.dim_h();
  for (int n = 1; n <= 3; ++n) {
    Index expect = 0;
    std::vector<std::size_t> w(static_cast<std::size_t>(n), 0);
    for (int code = 0; code < (1 << n); ++code) {
      for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (code >> i) & 1;
      if (composable(ctx.graph(), w)) expect += ctx.edge_block(w.back());
    }
    Index got = 0;
    for (const auto& c : ft.level(n)) got += c.size;
    EXPECT_EQ(got, expect) << "level " << n;
    total += expect;
  }
  EXPECT_EQ(ft.dimension(), total);
}

TEST(Fock, NonComposableProductIsZero) {
  const auto ctx = two_vertex();
  const FockTruncation ft(ctx, 3);
  const CMatrix t1 = creation_matrix(ft, CVector::Unit(2, 0));
  const CMatrix t2 = creation_matrix(ft, CVector::Unit(2, 1));
  // e1.e2 needs s(e1) = r(e2), but r(e2) = v2
  EXPECT_EQ(operator_norm(t1 * t2), 0.0);
  EXPECT_GT(operator_norm(t2 * t1), 0.5);
  EXPECT_TRUE(TensorPolynomial::word(ctx, {0, 1}).words.empty());
}

TEST(Fock, CovarianceAndNormBound) {
  const auto ctx = two_vertex();
  const FockTruncation ft(ctx, 4);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const CVector xi = gaussian_matrix(rng, 2, 1);
    const CVector av = gaussian_matrix(rng, 2, 1);
    const AlgebraElement a{{av(0), av(1)}};
    CVector axi = xi;
    axi(0) *= av(0);  // r(e1) = v1
    axi(1) *= av(1);  // r(e2) = v2
    EXPECT_LT(operator_norm(fock_algebra_op(ft, a) * creation_matrix(ft, xi) - creation_matrix(ft, axi)), 1e-12);
    EXPECT_LE(operator_norm(creation_matrix(ft, xi)), xi.norm() + 1e-12);
  }
}

TEST(Evaluate, SpecExamples) {
  const auto ctx = two_vertex();
  const Intertwiner eta = sample_disc(ctx, 1, 0.7);
  const AlgebraElement a{{Complex(2.0, 1.0), Complex(-0.5)}};
  EXPECT_LT(operator_norm(evaluate(ctx, TensorPolynomial::from_algebra(a), eta) - sigma_op(ctx, a)), 1e-15);
  EXPECT_EQ(operator_norm(evaluate(ctx, TensorPolynomial::word(ctx, {0}), Intertwiner::zero(3, 4))), 0.0);
  const auto sc = scalar();
  const Complex z(0.3, -0.6);
  EXPECT_EQ(evaluate(sc, TensorPolynomial::word(sc, {0}), Intertwiner(CMatrix::Constant(1, 1, z)))(0, 0), z);
  const Complex z3 = evaluate(sc, TensorPolynomial::word(sc, {0, 0, 0}), Intertwiner(CMatrix::Constant(1, 1, z)))(0, 0);
  EXPECT_LT(std::abs(z3 - z * z * z), 1e-16);
  EXPECT_EQ(code_of([&] { evaluate(sc, TensorPolynomial::word(sc, {0}), Intertwiner(CMatrix::Constant(1, 1, 1.0))); }),
            ErrorCode::OutsideDisc);
}

// Oracle: L_e written out by hand for the two-vertex example.
TEST(Evaluate, EdgeOperatorByHand) {
  const auto ctx = two_vertex();
  const Intertwiner eta = sample_disc(ctx, 4, 0.7);
  // L_e2 h = eta*(0 (+) P_v1 h): columns of the e2 block applied to H_v1
  CMatrix expect = CMatrix::Zero(3, 3);
  expect.block(0, 0, 3, 2) = eta.matrix().middleCols(2, 2);
  EXPECT_LT(operator_norm(edge_evaluation(ctx, eta.matrix(), 1) - expect), 1e-16);
  const CMatrix l1 = edge_evaluation(ctx, eta.matrix(), 0);
  const CMatrix l2 = edge_evaluation(ctx, eta.matrix(), 1);
  EXPECT_LT(operator_norm(evaluate(ctx, TensorPolynomial::word(ctx, {1, 0, 0}), eta) - l2 * l1 * l1), 1e-15);
}

TEST(Evaluate, Homomorphism) {
  const auto ctx = two_vertex();
  Rng rng(8);
  const Intertwiner eta = sample_disc(ctx.space(), rng, 0.9);
  auto p = parse_polynomial(ctx, "a{v1:(1+2i),v2:-0.5} + 0.3*e1 - (0+1i)*e2.e1 + e1.e1.e1");
  auto q = parse_polynomial(ctx, "2 + (0.5-0.5i)*e2 + e1.e1");
  EXPECT_LT(operator_norm(evaluate(ctx, multiply(ctx, p, q), eta) - evaluate(ctx, p, eta) * evaluate(ctx, q, eta)),
            1e-12);
  EXPECT_LT(operator_norm(evaluate(ctx, p + q, eta) - evaluate(ctx, p, eta) - evaluate(ctx, q, eta)), 1e-14);
  const FockTruncation ft(ctx, 6);
  EXPECT_LT(operator_norm(fock_operator(ft, multiply(ctx, p, q)) - fock_operator(ft, p) * fock_operator(ft, q)), 1e-12);
}

TEST(Parser, Grammar) {
  const auto ctx = two_vertex();
  const auto p = parse_polynomial(ctx, "a{v1:1,v2:0} + (2+0i)*e2.e1.e1");
  EXPECT_EQ(p.algebra[0], Complex(1.0));
  EXPECT_EQ(p.algebra[1], Complex(0.0));
  ASSERT_EQ(p.words.size(), 1u);
  EXPECT_EQ(p.words.at(Path{1, 0, 0}), Complex(2.0));
  // the grammar example word e1.e1.e2 does not compose and is zero
  EXPECT_TRUE(parse_polynomial(ctx, "(2+0i)*e1.e1.e2").words.empty());
  const auto q = parse_polynomial(ctx, "-e1 + (3i)*e1 - 1.5");
  EXPECT_EQ(q.words.at(Path{0}), Complex(-1.0, 3.0));
  EXPECT_EQ(q.algebra[0], Complex(-1.5));
  EXPECT_EQ(q.algebra[1], Complex(-1.5));
  EXPECT_EQ(parse_polynomial(ctx, "(1-2i)*a{v2:(0.5+0i)}").algebra[1], Complex(0.5, -1.0));
  for (const char* bad : {"e9", "a{zz:1}", "e1 +", "(1+2)*e1", "e1 e2", "a{v1 1}", ""})
    EXPECT_EQ(code_of([&] { parse_polynomial(ctx, bad); }), ErrorCode::ParseError) << bad;
}

TEST(Parser, EdgeNamedA) {
  const CorrespondenceContext ctx(DirectedGraph({"p"}, {{"a", "p", "p"}}), {1});
  const auto p = parse_polynomial(ctx, "a + a{p:2} + a.a");
  EXPECT_EQ(p.words.at(Path{0}), Complex(1.0));
  EXPECT_EQ(p.words.at(Path{0, 0}), Complex(1.0));
  EXPECT_EQ(p.algebra[0], Complex(2.0));
}

}  // namespace
}  // namespace discgrp
