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

#include "discgrp/json_io.hpp"

namespace discgrp {
namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorCode::InvalidArgument, "no error");
}

TEST(GraphJson, SampleFile) {
  const auto ctx = load_context(DISCGRP_SAMPLES "/graphs/two_vertex.json");
  EXPECT_EQ(ctx.vertex_count(), 2u);
  EXPECT_EQ(ctx.edge_count(), 2u);
  EXPECT_EQ(ctx.dim_h(), 3);
  EXPECT_EQ(ctx.dim_eh(), 4);
  EXPECT_EQ(ctx.space().dimension(), 6);
}

TEST(GraphJson, DefaultMultiplicity) {
  const auto ctx = context_from_string(R"({"vertices":["a","b"],"edges":[{"name":"x","src":"a","rng":"b"}],
                                           "multiplicities":{"b":3}})");
  EXPECT_EQ(ctx.multiplicity(0), 1);
  EXPECT_EQ(ctx.multiplicity(1), 3);
}

TEST(GraphJson, SyntaxErrorCarriesLine) {
  const Error e = error_of([] { context_from_string("{\n  \"vertices\": [\"a\",\n  ]\n}", "g.json"); });
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(e.what()).find("g.json:3:"), std::string::npos) << e.what();
}

TEST(GraphJson, SchemaErrors) {
  for (const char* text : {R"([])", R"({"edges":[]})", R"({"vertices":"a","edges":[]})",
                           R"({"vertices":["a"],"edges":[{"name":"x","src":"a"}]})",
                           R"({"vertices":["a"],"edges":[{"name":"x","src":"a","rng":1}]})",
                           R"({"vertices":["a"],"edges":[],"multiplicities":{"a":1.5}})"})
    EXPECT_EQ(error_of([&] { context_from_string(text); }).code(), ErrorCode::ParseError) << text;
  EXPECT_EQ(error_of([] { context_from_string(R"({"vertices":["a"],"edges":[],"multiplicities":{"z":1}})"); }).code(),
            ErrorCode::UnknownVertex);
  EXPECT_EQ(error_of([] { context_from_string(R"({"vertices":["a"],"edges":[{"name":"x","src":"a","rng":"q"}]})"); })
                .code(),
            ErrorCode::UnknownVertex);
  EXPECT_EQ(error_of([] { context_from_string(R"({"vertices":["a","a"],"edges":[]})"); }).code(),
            ErrorCode::DuplicateName);
  EXPECT_EQ(error_of([] { context_from_string(R"({"vertices":["a"],"edges":[],"multiplicities":{"a":0}})"); }).code(),
            ErrorCode::ZeroMultiplicity);
  EXPECT_EQ(error_of([] { load_context("/nonexistent/graph.json"); }).code(), ErrorCode::ParseError);
}

TEST(IntertwinerJson, RoundTrip) {
  const auto ctx = load_context(DISCGRP_SAMPLES "/graphs/cycle3.json");
  const Intertwiner x = sample_disc(ctx, 11, 0.8);
  const Json j = intertwiner_to_json(ctx, x);
  const Intertwiner y = intertwiner_from_json(ctx, parse_json_text(j.dump()));
  EXPECT_EQ(distance(x, y), 0.0);
  Json bad = j;
  bad["blocks"].begin().value().push_back(to_json(1.0));
  EXPECT_EQ(error_of([&] { intertwiner_from_json(ctx, bad); }).code(), ErrorCode::ShapeMismatch);
}

TEST(MatrixJson, RoundTrip) {
  CMatrix m(2, 3);
  m << Complex(1, 2), 3, Complex(0, -1), 0.5, Complex(-2, 0.25), 7;
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_EQ(error_of([] { matrix_from_json(Json::parse("[[[1,2]],[]]")); }).code(), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { complex_from_json(Json::parse("[1]")); }).code(), ErrorCode::ParseError);
}

}  // namespace
}  // namespace discgrp
