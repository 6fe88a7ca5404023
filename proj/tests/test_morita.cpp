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

#include <numeric>

#include "discgrp/morita.hpp"

namespace discgrp {
namespace {

CorrespondenceContext two_vertex() {
  return {DirectedGraph({"v1", "v2"}, {{"e1", "v1", "v1"}, {"e2", "v1", "v2"}}), {2, 1}};
}
// two edges into b, so W is a genuine permutation
CorrespondenceContext fan_in() {
  return {DirectedGraph({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}, {"h", "a", "b"}, {"l", "b", "b"}}), {2, 1}};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Morita, Bookkeeping) {
  const MoritaContext m(two_vertex(), {2, 1});
  EXPECT_EQ(m.dim_k(), 2 * 2 + 1 * 1);
  // E (x) K: e1 -> k_v1 * m_v1 = 4, e2 -> k_v2 * m_v1 = 2
  EXPECT_EQ(m.dim_ek(), 6);
  EXPECT_EQ(m.target().dimension(), m.source().space().dimension());
  EXPECT_EQ(code_of([] { MoritaContext(two_vertex(), {0, 1}); }), ErrorCode::RankZero);
  EXPECT_EQ(code_of([] { MoritaContext(two_vertex(), {1}); }), ErrorCode::InvalidArgument);
}

TEST(Morita, InducedRep) {
  const MoritaContext m(two_vertex(), {2, 1});
  const CMatrix p = induced_rep(m, AlgebraElement::indicator(2, 0));
  EXPECT_LT(operator_norm(p * p - p), 1e-15);
  EXPECT_NEAR(p.trace().real(), 4.0, 1e-15);
  EXPECT_LT(operator_norm(induced_rep(m, AlgebraElement::constant(2, 1.0)) - CMatrix::Identity(5, 5)), 1e-15);
  EXPECT_EQ(operator_norm(induced_rep(m, AlgebraElement::constant(2, 0.0))), 0.0);
}

// Oracle: the module-level W is unitary and intertwines both actions.
TEST(Morita, WIsABimoduleMap) {
  for (const auto& ctx : {two_vertex(), fan_in()}) {
    const MoritaContext m(ctx, {2, 3});
    const CMatrix& w = m.w_module();
    EXPECT_LT(unitarity_defect(w), 1e-15);
    for (std::size_t v = 0; v < 2; ++v) {
      for (Index i = 0; i < m.rank(v); ++i)
        for (Index j = 0; j < m.rank(v); ++j) {
          const auto [l, lp] = m.module_left(v, i, j);
          EXPECT_LT(operator_norm(w * l - lp * w), 1e-15);
        }
      const auto [r, rp] = m.module_right(v);
      EXPECT_LT(operator_norm(w * r - rp * w), 1e-15);
    }
    EXPECT_LT(unitarity_defect(m.w_h()), 1e-15);
  }
  const MoritaContext m(fan_in(), {1, 2});
  std::vector<Index> identity(m.w_permutation().size());
  std::iota(identity.begin(), identity.end(), 0);
  EXPECT_NE(m.w_permutation(), identity);
}

TEST(Morita, TrivialRanksIsIdentification) {
  const auto ctx = two_vertex();
  const MoritaContext m(ctx, {1, 1});
  const Intertwiner eta = sample_disc(ctx, 3, 0.6);
  const Intertwiner x = transport(m, eta);
  EXPECT_LT(distance(x, eta), 1e-15);  // edges already grouped by range
  const MoritaContext mf(fan_in(), {1, 1});
  const Intertwiner ef = sample_disc(mf.source(), 3, 0.6);
  const Intertwiner xf = transport(mf, ef);
  // with k = 1 the permutation W is undone by the grouping in I_X (x) eta*
  EXPECT_LT(distance(xf, ef), 1e-15);
  EXPECT_LT(unitarity_defect(mf.w_h()), 1e-15);
  EXPECT_NEAR(xf.norm(), ef.norm(), 1e-14);
}

TEST(Morita, TransportIsIsometricSurjection) {
  for (const auto& ctx : {two_vertex(), fan_in()}) {
    const MoritaContext m(ctx, {2, 1});
    EXPECT_EQ(transport(m, Intertwiner::zero(ctx.dim_h(), ctx.dim_eh())).norm(), 0.0);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Intertwiner eta = sample_disc(ctx, s, 0.7);
      const Intertwiner x = transport(m, eta);
      // SVD oracle on the transported matrix
      EXPECT_NEAR(Eigen::JacobiSVD<CMatrix>(x.matrix()).singularValues()(0), 0.7, 1e-10);
      EXPECT_LT(m.target().relation_residual(x.matrix()), 1e-14);
      EXPECT_LT(distance(reverse_transport(m, x), eta), 1e-15);
    }
    CMatrix coords(m.target().dimension(), ctx.space().dimension());
    for (Index k = 0; k < ctx.space().dimension(); ++k)
      coords.col(k) = m.target().coordinates(transport(m, Intertwiner(ctx.space().basis()[k])).matrix());
    EXPECT_EQ(Eigen::FullPivLU<CMatrix>(coords).rank(), m.target().dimension());
  }
}

TEST(Morita, Functors) {
  const auto ctx = fan_in();
  const MoritaContext m(ctx, {2, 3});
  const Index sh = ctx.dim_h(), sk = ctx.dim_eh(), th = m.dim_k(), tk = m.dim_ek();
  EXPECT_LT(automorphism_distance(m.target(), functor_F(m, DiscAutomorphism::identity(sh, sk)),
                                  DiscAutomorphism::identity(th, tk)),
            1e-14);
  EXPECT_LT(automorphism_distance(ctx.space(), functor_G(m, DiscAutomorphism::identity(th, tk)),
                                  DiscAutomorphism::identity(sh, sk)),
            1e-14);
  Rng rng(6);
  const auto g = random_automorphism(ctx, rng, 0.8);
  const auto h = random_automorphism(ctx, rng, 0.8);
  const Intertwiner eta = sample_disc(ctx.space(), rng, 0.7);
  const Intertwiner zeta = transport(m, eta);
  // F(g) agrees with transport o g o transport^{-1}
  EXPECT_LT(distance(apply(functor_F(m, g), zeta), transport(m, apply(g, eta))), 1e-12);
  EXPECT_LT(distance(apply(functor_F(m, compose(g, h)), zeta), apply(functor_F(m, g), apply(functor_F(m, h), zeta))),
            1e-11);
  EXPECT_LT(distance(apply(functor_G(m, functor_F(m, g)), eta), apply(g, eta)), 1e-12);
  const auto gp = random_target_automorphism(m, rng, 0.8);
  const auto hp = random_target_automorphism(m, rng, 0.8);
  EXPECT_LT(distance(apply(functor_G(m, compose(gp, hp)), eta), apply(functor_G(m, gp), apply(functor_G(m, hp), eta))),
            1e-11);
  EXPECT_LT(distance(apply(functor_F(m, functor_G(m, gp)), zeta), apply(gp, zeta)), 1e-12);
}

TEST(Morita, FunctorGRequiresCommutantData) {
  const MoritaContext m(two_vertex(), {2, 1});
  Rng rng(1);
  auto gp = random_target_automorphism(m, rng, 0.5);
  gp.omega.u = random_unitary(rng, m.dim_k());
  EXPECT_EQ(code_of([&] { functor_G(m, gp); }), ErrorCode::NotInCommutant);
}

TEST(Morita, Naturality) {
  for (const auto& ranks : {std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
    const auto ctx = two_vertex();
    const MoritaContext m(ctx, ranks);
    const Intertwiner eta = sample_disc(ctx, 2, 0.6);
    const auto id = naturality_defect(m, DiscAutomorphism::identity(3, 4), eta);
    EXPECT_LT(id.epsilon, 1e-14);
    EXPECT_LT(id.lambda, 1e-14);
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng(s);
      const auto nd = naturality_defect(m, random_automorphism(ctx, rng, 0.9), sample_disc(ctx.space(), rng, 0.9));
      EXPECT_LT(nd.epsilon, 1e-10);
      EXPECT_LT(nd.lambda, 1e-10);
    }
  }
}

}  // namespace
}  // namespace discgrp
