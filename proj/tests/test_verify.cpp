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

#include "discgrp/verify.hpp"

namespace discgrp {
namespace {

RunConfig config(const std::string& graph, const std::string& suite, int trials = 5) {
  RunConfig cfg;
  cfg.graph_path = std::string(DISCGRP_SAMPLES "/graphs/") + graph;
  cfg.suite = suite;
  cfg.trials = trials;
  return cfg;
}

TEST(Verify, ParseRanks) {
  const auto r = parse_ranks("v1=2,v2=1");
  EXPECT_EQ(r.at("v1"), 2);
  EXPECT_EQ(r.at("v2"), 1);
  EXPECT_TRUE(parse_ranks("").empty());
  for (const char* bad : {"v1", "=2", "v1=", "v1=x", "v1=2x"})
    EXPECT_THROW(parse_ranks(bad), Error) << bad;
}

TEST(Verify, ScalarOracle) { EXPECT_LE(scalar_oracle_residual(), 1e-12); }

TEST(Verify, ScalarAllPasses) {
  const RunOutcome out = run(config("scalar.json", "all"));
  EXPECT_EQ(out.exit_code, 0) << out.summary;
  EXPECT_EQ(out.report["schema"], "discgrp/1");
  EXPECT_EQ(out.report["suites"].size(), suite_names().size());
  for (const auto& s : out.report["suites"]) {
    if (s["name"] == "normality") EXPECT_EQ(s["status"], "skipped");
    else EXPECT_EQ(s["status"], "pass") << s.dump();
  }
}

TEST(Verify, EachSuiteOnTwoVertex) {
  for (const auto& name : suite_names()) {
    const RunOutcome out = run(config("two_vertex.json", name));
    EXPECT_EQ(out.exit_code, 0) << name << "\n" << out.report.dump(1);
  }
}

TEST(Verify, SelectedSuiteWithUnmetHypotheses) {
  const RunOutcome out = run(config("with_source.json", "isometry"));
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.report["suites"][0]["status"], "hypotheses_not_met");
  const RunOutcome all = run(config("with_source.json", "all", 3));
  EXPECT_EQ(all.exit_code, 0) << all.summary;
}

TEST(Verify, UnknownSuiteAndBadConfig) {
  EXPECT_THROW(run(config("scalar.json", "nope")), Error);
  RunConfig cfg = config("scalar.json", "moebius");
  cfg.trials = 0;
  EXPECT_THROW(run(cfg), Error);
}

TEST(Verify, ReportDeterministicApartFromTiming) {
  auto strip = [](Json j) {
    for (auto& s : j["suites"]) s.erase("timing_ms");
    return j;
  };
  const RunConfig cfg = config("loop_free.json", "all", 3);
  EXPECT_EQ(strip(run(cfg).report), strip(run(cfg).report));
}

TEST(Verify, MoritaRanksReported) {
  RunConfig cfg = config("two_vertex.json", "morita", 3);
  cfg.morita_ranks = parse_ranks("v1=2,v2=3");
  const RunOutcome out = run(cfg);
  EXPECT_EQ(out.exit_code, 0) << out.report.dump(1);
  EXPECT_EQ(out.report["config"]["morita_ranks"]["v2"], 3);
}

TEST(Verify, FailureIsRecorded) {
  SuiteResult r("x");
  EXPECT_TRUE(r.bound("ok", 1e-12, 1e-10));
  EXPECT_FALSE(r.bound("bad", 1.0, 1e-10, 7, [] { return Json{{"k", 1}}; }));
  EXPECT_FALSE(r.exceed("cert", 0.0, 1e-3));
  EXPECT_EQ(r.status(), "fail");
  EXPECT_EQ(r.failures().size(), 2u);
  EXPECT_EQ(r.failures()[0]["seed"], 7);
  EXPECT_EQ(r.failures()[0]["inputs"]["k"], 1);
}

TEST(Sample, DeterministicAndInside) {
  const auto scalar = load_context(DISCGRP_SAMPLES "/graphs/scalar.json");
  for (std::uint64_t seed : {1u, 2u, 42u, 1000u}) {
    const Json a = sample_command(scalar, seed);
    EXPECT_EQ(a, sample_command(scalar, seed));
    const Complex z = complex_from_json(a["sample"]["blocks"]["v,e"][0]);
    EXPECT_LT(std::abs(z), 0.95);
    EXPECT_LE(std::abs(std::abs(z) - a["radius_cap"].get<double>()), 1e-15);
  }
  const auto two = load_context(DISCGRP_SAMPLES "/graphs/two_vertex.json");
  const Json b = sample_command(two, 5);
  EXPECT_EQ(b["dimension"], 6);
  EXPECT_EQ(b["pattern"].size(), 2u);
}

}  // namespace
}  // namespace discgrp
