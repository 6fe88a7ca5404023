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

// discgrp: seeded verification runs, disc samples and polynomial evaluation
// for graph correspondences read from JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "discgrp.hpp"

namespace {

constexpr const char* kPolyHelp = R"(Polynomial grammar:
  poly   := ['+'|'-'] term (('+'|'-') term)*
  term   := [scalar '*'] word | [scalar '*'] 'a{' vertex ':' scalar (',' ...)* '}' | scalar
  word   := edge ('.' edge)*      (adjacent edges must compose: src(e_i) = rng(e_{i+1}))
  scalar := number | '(' re ('+'|'-') im 'i' ')' | '(' im 'i' ')'
Example: a{v1:1,v2:0} + (2+0i)*e2.e1.e1
Words that do not compose are zero.)";

int fail(const discgrp::Error& e) {
  std::cerr << "discgrp: " << e.what() << "\n";
  return 2;
}

void write_or_print(const discgrp::Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw discgrp::Error(discgrp::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disc automorphisms of graph correspondences: verification harness"};
  app.require_subcommand(1);

  discgrp::RunConfig cfg;
  std::string ranks;
  auto* run = app.add_subcommand("run", "Run verification suites and write a JSON report");
  run->add_option("--graph", cfg.graph_path, "Graph JSON file")->required();
  run->add_option("--suite", cfg.suite,
                  "moebius | matrixrep | pseudo | center | isometry | normality | morita | eval | all")
      ->capture_default_str();
  run->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  run->add_option("--trials", cfg.trials, "Trials per suite")->capture_default_str();
  run->add_option("--tol", cfg.tol.abs_tol, "Absolute tolerance")->capture_default_str();
  run->add_option("--margin", cfg.tol.margin, "Distance kept from the unit sphere")->capture_default_str();
  run->add_option("--morita-ranks", ranks, "Ranks of X per vertex, e.g. v1=2,v2=1");
  run->add_option("-o,--output", cfg.output, "Report path (default: report to stdout, summary to stderr)");

  std::string graph;
  std::uint64_t seed = 1;
  discgrp::Tolerance tol;
  auto* sample = app.add_subcommand("sample", "Print one seeded point of the open disc");
  sample->add_option("--graph", graph, "Graph JSON file")->required();
  sample->add_option("--seed", seed, "Seed")->capture_default_str();
  sample->add_option("--margin", tol.margin, "Distance kept from the unit sphere")->capture_default_str();

  std::string poly;
  std::string eta_path;
  auto* eval = app.add_subcommand("eval", "Evaluate a tensor-algebra polynomial at a disc point");
  eval->add_option("--graph", graph, "Graph JSON file")->required();
  eval->add_option("--poly", poly, "Polynomial, see grammar below")->required();
  eval->add_option("--eta", eta_path, "Point as intertwiner JSON (default: seeded sample)");
  eval->add_option("--seed", seed, "Seed for the sampled point")->capture_default_str();
  eval->footer(kPolyHelp);
  app.footer(kPolyHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      cfg.morita_ranks = discgrp::parse_ranks(ranks);
      const discgrp::RunOutcome outcome = discgrp::run(cfg);
      if (cfg.output.empty()) {
        std::cerr << outcome.summary;
      } else {
        std::cout << outcome.summary;
      }
      write_or_print(outcome.report, cfg.output);
      return outcome.exit_code;
    }
    if (*sample) {
      const auto ctx = discgrp::load_context(graph);
      std::cout << discgrp::sample_command(ctx, seed, tol).dump(2) << "\n";
      return 0;
    }
    if (*eval) {
      const auto ctx = discgrp::load_context(graph);
      const auto p = discgrp::parse_polynomial(ctx, poly);
      discgrp::Intertwiner eta;
      if (eta_path.empty()) {
        eta = discgrp::sample_disc(ctx, seed, 0.5);
      } else {
        eta = discgrp::intertwiner_from_json(ctx, discgrp::parse_json_text(discgrp::read_file(eta_path), eta_path));
      }
      std::cout << discgrp::Json{{"eta_star", discgrp::intertwiner_to_json(ctx, eta)},
                                 {"value", discgrp::matrix_to_json(discgrp::evaluate(ctx, p, eta))}}
                       .dump(2)
                << "\n";
      return 0;
    }
  } catch (const discgrp::Error& e) {
    return fail(e);
  }
  return 0;
}
