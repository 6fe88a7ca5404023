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

#include "discgrp/matrix_rep.hpp"

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

TEST(Homogeneous, Canonicalize) {
  const auto ctx = two_vertex();
  const Intertwiner eta = sample_disc(ctx, 1, 0.5);
  const PPoint p = homogeneous(eta);
  EXPECT_LT(operator_norm(canonicalize(p).eta - eta.matrix()), 1e-15);
  CMatrix c = CMatrix::Identity(3, 3);
  c(0, 1) = 0.5;
  c(2, 2) = Complex(0.0, 2.0);
  const PPoint q{c, c * eta.matrix()};
  EXPECT_LT(operator_norm(canonicalize(q).eta - eta.matrix()), 1e-14);
  EXPECT_EQ(code_of([&] { canonicalize(PPoint{CMatrix::Zero(3, 3), eta.matrix()}); }), ErrorCode::SingularU);
}

TEST(RepMatrix, ActMatchesApply) {
  const auto ctx = two_vertex();
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const auto g = random_automorphism(ctx, rng, 0.9);
    const Intertwiner eta = sample_disc(ctx.space(), rng, 0.9);
    const PPoint r = act(homogeneous(eta), rep_matrix(g));
    EXPECT_LT(distance(Intertwiner(r.eta), apply(g, eta)), 1e-12);
  }
}

TEST(RepMatrix, SpecExamples) {
  const auto ctx = two_vertex();
  // identity automorphism
  const RepMatrix ti = rep_matrix(DiscAutomorphism::identity(3, 4));
  const Intertwiner eta = sample_disc(ctx, 2, 0.6);
  EXPECT_LT(distance(Intertwiner(act(homogeneous(eta), ti).eta), eta), 1e-15);
  // a pure isometry has transfer diag(u*, v*)
  Rng rng(5);
  const auto w = random_admissible_isometry(ctx, rng);
  const RepMatrix tw = rep_matrix(DiscAutomorphism::isometry(w));
  EXPECT_LT(operator_norm(tw.a11() - w.u.adjoint()), 1e-14);
  EXPECT_LT(operator_norm(tw.a22() - w.vstar), 1e-14);
  EXPECT_EQ(operator_norm(tw.a12()), 0.0);
  EXPECT_EQ(operator_norm(tw.a21()), 0.0);
  // bare Moebius map
  const Intertwiner gamma = sample_disc(ctx, 3, 0.7);
  const RepMatrix tg = rep_matrix(DiscAutomorphism::moebius(gamma));
  EXPECT_LT(distance(Intertwiner(act(homogeneous(eta), tg).eta), MoebiusMap(gamma)(eta)), 1e-13);
}

// Psi(g o f) = Psi(g) * Psi(f) with * the opposite product.
TEST(RepClass, OppositeProduct) {
  const auto ctx = two_vertex();
  Rng rng(9);
  const auto g = random_automorphism(ctx, rng, 0.8);
  const auto f = random_automorphism(ctx, rng, 0.8);
  const RepClass prod = op_product(psi(g), psi(f));
  EXPECT_LT(operator_norm(prod.rep.matrix() - rep_matrix(f).matrix() * rep_matrix(g).matrix()), 1e-15);
  EXPECT_LT(class_distance(ctx.space(), prod, psi(compose(g, f))), 1e-11);
  // the other order is a different automorphism in general
  const RepClass wrong{RepMatrix(rep_matrix(g).matrix() * rep_matrix(f).matrix(), 3)};
  EXPECT_GT(class_distance(ctx.space(), wrong, psi(compose(g, f))), 1e-3);
  EXPECT_LT(class_distance(ctx.space(), op_product(identity_class(3, 4), psi(g)), psi(g)), 1e-12);
}

TEST(RepClass, Inverse) {
  const auto ctx = two_vertex();
  Rng rng(10);
  const auto g = random_automorphism(ctx, rng, 0.8);
  const RepClass ri = rep_inverse(psi(g));
  EXPECT_LT(class_distance(ctx.space(), ri, psi(inverse(g))), 1e-11);
  // kappa T* kappa is the same inverse up to the class relation
  const RepMatrix k = RepMatrix::kappa(3, 4);
  const CMatrix alt = k.matrix() * rep_matrix(g).matrix().adjoint() * k.matrix();
  EXPECT_LT(operator_norm(alt - ri.rep.matrix()), 1e-12);
  const Intertwiner eta = sample_disc(ctx.space(), rng, 0.7);
  EXPECT_LT(distance(apply(automorphism_of(op_product(psi(g), ri)), eta), eta), 1e-11);
}

TEST(Pseudo, UnitaryAndCorrupted) {
  const auto ctx = two_vertex();
  Rng rng(11);
  const auto g = random_automorphism(ctx, rng, 0.95);
  const RepMatrix t = rep_matrix(g);
  EXPECT_LT(pseudo_unitary_defect(t), 1e-12);
  CMatrix bad = t.matrix();
  bad(1, 4) += 0.1;
  EXPECT_GT(pseudo_unitary_defect(RepMatrix(bad, 3)), 1e-3);
  EXPECT_EQ(code_of([] { RepMatrix(CMatrix::Identity(2, 3), 1); }), ErrorCode::ShapeMismatch);
}

TEST(Pseudo, IdentitiesAndSeriesCrossCheck) {
  const auto ctx = two_vertex();
  for (const double r : {0.0, 0.3, 0.7, 0.9}) {
    const Intertwiner g = r == 0.0 ? Intertwiner::zero(3, 4) : sample_disc(ctx, 17, r);
    for (double d : neumann_identities_defect(g)) EXPECT_LT(d, 1e-12);
    for (double d : neumann_series_defect(g, 200)) EXPECT_LT(d, 1e-10);
  }
  // the series with few terms shows its truncation error |gamma|^{2N}
  const Intertwiner g = sample_disc(ctx, 17, 0.9);
  const auto coarse = neumann_series_defect(g, 5);
  EXPECT_NEAR(coarse[0], std::pow(0.9, 10), 1e-12);
  EXPECT_EQ(code_of([&] { neumann_identities_defect(Intertwiner(g.matrix() * (0.97 / 0.9))); }),
            ErrorCode::OutsideDisc);
}

}  // namespace
}  // namespace discgrp
