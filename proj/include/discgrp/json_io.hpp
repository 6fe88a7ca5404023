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

// JSON in and out. Graph files:
//   {"vertices":["v1",...],
//    "edges":[{"name":"e1","src":"v1","rng":"v1"},...],
//    "multiplicities":{"v1":2,...}}          (optional; missing vertices get 1)
// Complex numbers are [re, im]; dense matrices are arrays of rows.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "discgrp/correspondence.hpp"
#include "discgrp/disc_group.hpp"
#include "discgrp/intertwiners.hpp"
#include "discgrp/matrix_rep.hpp"
#include "discgrp/morita.hpp"

namespace discgrp {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

[[noreturn]] inline void schema_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, "graph schema: " + what);
}

inline const Json& member(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline std::string string_field(const Json& obj, const char* key) {
  const Json& v = member(obj, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// Parses JSON text; syntax errors become ParseError with the line number.
inline Json parse_json_text(const std::string& text, const std::string& origin = "<input>") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::ParseError,
                origin + ":" + std::to_string(detail::line_of(text, byte)) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CorrespondenceContext context_from_json(const Json& j) {
  if (!j.is_object()) detail::schema_error("top level must be an object");
  const Json& vs = detail::member(j, "vertices");
  if (!vs.is_array()) detail::schema_error("'vertices' must be an array");
  std::vector<std::string> vertices;
  for (const Json& v : vs) {
    if (!v.is_string()) detail::schema_error("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  const Json& es = detail::member(j, "edges");
  if (!es.is_array()) detail::schema_error("'edges' must be an array");
  std::vector<DirectedGraph::EdgeSpec> edges;
  for (const Json& e : es)
    edges.push_back({detail::string_field(e, "name"), detail::string_field(e, "src"),
                     detail::string_field(e, "rng")});
  DirectedGraph graph(std::move(vertices), edges);
  std::map<std::string, int> mult;
  if (j.contains("multiplicities")) {
    const Json& ms = j.at("multiplicities");
    if (!ms.is_object()) detail::schema_error("'multiplicities' must be an object");
    for (const auto& [name, value] : ms.items()) {
      if (!value.is_number_integer()) detail::schema_error("multiplicity of '" + name + "' must be an integer");
      mult[name] = value.get<int>();
    }
  }
  return build_context(graph, mult);
}

inline CorrespondenceContext context_from_string(const std::string& text, const std::string& origin = "<input>") {
  return context_from_json(parse_json_text(text, origin));
}

inline CorrespondenceContext load_context(const std::string& path) {
  return context_from_string(read_file(path), path);
}

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::ParseError, "complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows > 0 ? static_cast<Index>(j[0].size()) : 0;
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw Error(ErrorCode::ParseError, "ragged matrix");
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

/// {"blocks": {"v,e": [[re,im],...]}} over the allowed cells, row-major.
inline Json intertwiner_to_json(const CorrespondenceContext& ctx, const Intertwiner& x) {
  Json blocks = Json::object();
  const auto& g = ctx.graph();
  for (std::size_t e = 0; e < ctx.edge_count(); ++e) {
    const std::size_t v = g.edge(e).rng;
    const CMatrix b = ctx.block(x.matrix(), v, e);
    Json flat = Json::array();
    for (Index i = 0; i < b.rows(); ++i)
      for (Index k = 0; k < b.cols(); ++k) flat.push_back(to_json(b(i, k)));
    blocks[g.vertices()[v] + "," + g.edge(e).name] = std::move(flat);
  }
  return Json{{"blocks", std::move(blocks)}};
}

inline Intertwiner intertwiner_from_json(const CorrespondenceContext& ctx, const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.at("blocks").is_object())
    throw Error(ErrorCode::ParseError, "intertwiner JSON needs a 'blocks' object");
  CMatrix m = CMatrix::Zero(ctx.dim_h(), ctx.dim_eh());
  const auto& g = ctx.graph();
  for (const auto& [key, flat] : j.at("blocks").items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "block key '" + key + "' is not 'v,e'");
    const std::size_t v = g.require_vertex(key.substr(0, comma));
    const auto e = g.find_edge(key.substr(comma + 1));
    if (!e) throw Error(ErrorCode::ParseError, "unknown edge in block key '" + key + "'");
    auto b = ctx.block(m, v, *e);
    if (!flat.is_array() || static_cast<Index>(flat.size()) != b.size())
      throw Error(ErrorCode::ShapeMismatch, "block '" + key + "' has the wrong number of entries");
    for (Index i = 0; i < b.rows(); ++i)
      for (Index k = 0; k < b.cols(); ++k) b(i, k) = complex_from_json(flat[static_cast<std::size_t>(i * b.cols() + k)]);
  }
  return make_intertwiner(ctx, m);
}

inline Json automorphism_to_json(const DiscAutomorphism& g) {
  return Json{{"u", matrix_to_json(g.omega.u)},
              {"vstar", matrix_to_json(g.omega.vstar)},
              {"gamma_star", matrix_to_json(g.gamma_star.matrix())}};
}

inline Json automorphism_to_json(const CorrespondenceContext& ctx, const DiscAutomorphism& g) {
  return Json{{"u", matrix_to_json(g.omega.u)},
              {"vstar", matrix_to_json(g.omega.vstar)},
              {"gamma_star", intertwiner_to_json(ctx, g.gamma_star)}};
}

/// Four dense complex blocks.
inline Json rep_matrix_to_json(const RepMatrix& t) {
  return Json{{"a11", matrix_to_json(t.a11())},
              {"a12", matrix_to_json(t.a12())},
              {"a21", matrix_to_json(t.a21())},
              {"a22", matrix_to_json(t.a22())}};
}

inline Json morita_summary(const MoritaContext& m) {
  Json ranks = Json::object();
  for (std::size_t v = 0; v < m.source().vertex_count(); ++v)
    ranks[m.source().graph().vertices()[v]] = m.rank(v);
  return Json{{"ranks", std::move(ranks)},
              {"dim_xh", m.dim_k()},
              {"dim_exh", m.dim_ek()},
              {"source_dimension", m.source().space().dimension()},
              {"target_dimension", m.target().dimension()},
              {"w_permutation", m.w_permutation()}};
}

}  // namespace discgrp
