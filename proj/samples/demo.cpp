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

// Walks through the two-vertex example: a loop e1 at v1, an edge e2 from v1
// to v2, multiplicities (2, 1).

#include <iostream>

#include "discgrp.hpp"

int main() {
  using namespace discgrp;
  const CorrespondenceContext ctx({DirectedGraph({"v1", "v2"}, {{"e1", "v1", "v1"}, {"e2", "v1", "v2"}}), {2, 1}});
  std::cout << "dim H = " << ctx.dim_h() << ", dim E(x)H = " << ctx.dim_eh()
            << ", intertwiner dimension = " << ctx.space().dimension() << "\n";

  Rng rng(7);
  const Intertwiner gamma = sample_disc(ctx.space(), rng, 0.6);
  const Intertwiner eta = sample_disc(ctx.space(), rng, 0.8);
  const MoebiusMap g(gamma);
  std::cout << "|g(g(eta)) - eta| = " << distance(g(g(eta)), eta) << "\n";

  const DiscAutomorphism a = random_automorphism(ctx, rng, 0.7);
  const RepMatrix t = rep_matrix(a);
  std::cout << "pseudo-unitary defect = " << pseudo_unitary_defect(t) << "\n";
  std::cout << "act vs apply = " << distance(Intertwiner(act(homogeneous(eta), t).eta), apply(a, eta)) << "\n";

  const auto w = noncommuting_witness(ctx.space(), a);
  std::cout << "commutator witness norm = " << w.commutator_norm << "\n";

  const auto nw = normality_witness(ctx, 11);
  std::cout << "normality certificate = " << nw.certificate << " after " << nw.trials << " trial(s)\n";

  const MoritaContext m(ctx, {2, 1});
  std::cout << "dim X(x)H = " << m.dim_k() << ", |eta^X| - |eta| = " << transport(m, eta).norm() - eta.norm() << "\n";

  const auto p = parse_polynomial(ctx, "a{v1:1,v2:0} + (2+0i)*e2.e1.e1");
  std::cout << "evaluated polynomial:\n" << evaluate(ctx, p, eta) << "\n";
  return 0;
}
