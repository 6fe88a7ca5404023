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

// Truncated Fock space over a graph correspondence, creation operators, and
// point evaluation of tensor-algebra polynomials at disc points.
//
// A path e1.e2...en is admissible when s(e_i) = r(e_{i+1}); E^{(x)n} (x) H is
// (+)_paths H_{s(en)}, level 0 being H itself.

#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "discgrp/correspondence.hpp"
#include "discgrp/intertwiners.hpp"

namespace discgrp {

using Path = std::vector<std::size_t>;

inline bool composable(const DirectedGraph& g, const Path& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (g.edge(p[i]).src != g.edge(p[i + 1]).rng) return false;
  return true;
}

class FockTruncation {
 public:
  struct Cell {
    Path path;            ///< empty at level 0
    std::size_t vertex;   ///< level 0: the vertex; otherwise s(last edge)
    Index offset;
    Index size;
  };

  FockTruncation(const CorrespondenceContext& ctx, int order = 4) : ctx_(&ctx), order_(order) {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 0");
    const auto& g = ctx.graph();
    levels_.resize(static_cast<std::size_t>(order) + 1);
    for (std::size_t v = 0; v < ctx.vertex_count(); ++v) levels_[0].push_back({{}, v, 0, ctx.multiplicity(v)});
    for (int n = 1; n <= order; ++n)
      for (const Cell& c : levels_[static_cast<std::size_t>(n) - 1])
        for (std::size_t e = 0; e < ctx.edge_count(); ++e)
          if (g.edge(e).src == front_vertex(c)) {
            Path p{e};
            p.insert(p.end(), c.path.begin(), c.path.end());
            levels_[static_cast<std::size_t>(n)].push_back({std::move(p), c.vertex, 0, c.size});
          }
    for (auto& level : levels_)
      for (Cell& c : level) {
        c.offset = dim_;
        dim_ += c.size;
      }
  }

  const CorrespondenceContext& context() const { return *ctx_; }
  int order() const { return order_; }
  Index dimension() const { return dim_; }
  const std::vector<Cell>& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }

  /// Index of the cell carrying `path` at its level, or -1.
  long find(const Path& path, std::size_t vertex) const {
    if (path.size() > static_cast<std::size_t>(order_)) return -1;
    const auto& lv = levels_[path.size()];
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (lv[i].path == path && lv[i].vertex == vertex) return static_cast<long>(i);
    return -1;
  }

  /// r of a cell: r(e1), or the vertex at level 0.
  std::size_t front_vertex(const Cell& c) const {
    return c.path.empty() ? c.vertex : ctx_->graph().edge(c.path.front()).rng;
  }

 private:
  const CorrespondenceContext* ctx_;
  int order_;
  std::vector<std::vector<Cell>> levels_;
  Index dim_ = 0;
};

/// T_xi on the truncated Fock space: (p, h) -> Sum_e xi_e (e.p, h), with the
/// top level sent to zero.
inline CMatrix creation_matrix(const FockTruncation& ft, const CVector& xi) {
  const auto& ctx = ft.context();
  if (xi.size() != static_cast<Index>(ctx.edge_count()))
    throw Error(ErrorCode::ShapeMismatch, "one coefficient per edge is required");
  if (ft.order() < 1) throw Error(ErrorCode::InvalidArgument, "creation operators need order >= 1");
  CMatrix t = CMatrix::Zero(ft.dimension(), ft.dimension());
  for (int n = 0; n < ft.order(); ++n)
    for (const auto& c : ft.level(n))
      for (std::size_t e = 0; e < ctx.edge_count(); ++e) {
        if (ctx.graph().edge(e).src != ft.front_vertex(c)) continue;
        Path p{e};
        p.insert(p.end(), c.path.begin(), c.path.end());
        const long idx = ft.find(p, c.vertex);
        const auto& to = ft.level(n + 1)[static_cast<std::size_t>(idx)];
        t.block(to.offset, c.offset, c.size, c.size) += xi(static_cast<Index>(e)) * CMatrix::Identity(c.size, c.size);
      }
  return t;
}

/// phi_infinity(a): a(r(p)) on each path cell.
inline CMatrix fock_algebra_op(const FockTruncation& ft, const AlgebraElement& a) {
  check_algebra_element(ft.context(), a);
  CMatrix out = CMatrix::Zero(ft.dimension(), ft.dimension());
  for (int n = 0; n <= ft.order(); ++n)
    for (const auto& c : ft.level(n))
      out.diagonal().segment(c.offset, c.size).setConstant(a.values[ft.front_vertex(c)]);
  return out;
}

/// Element of the tensor algebra: an algebra term plus coefficients on
/// admissible edge paths. Non-admissible words are zero and never stored.
struct TensorPolynomial {
  std::vector<Complex> algebra;
  std::map<Path, Complex> words;

  static TensorPolynomial zero(const CorrespondenceContext& ctx) {
    return {std::vector<Complex>(ctx.vertex_count(), 0.0), {}};
  }
  static TensorPolynomial from_algebra(const AlgebraElement& a) { return {a.values, {}}; }
  static TensorPolynomial word(const CorrespondenceContext& ctx, const Path& p, Complex c = 1.0) {
    TensorPolynomial out = zero(ctx);
    if (!p.empty() && composable(ctx.graph(), p)) out.words[p] = c;
    return out;
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [p, c] : words) d = std::max(d, p.size());
    return d;
  }
};

inline TensorPolynomial operator+(const TensorPolynomial& a, const TensorPolynomial& b) {
  if (a.algebra.size() != b.algebra.size()) throw Error(ErrorCode::ShapeMismatch, "polynomials over different graphs");
  TensorPolynomial out = a;
  for (std::size_t v = 0; v < b.algebra.size(); ++v) out.algebra[v] += b.algebra[v];
  for (const auto& [p, c] : b.words) out.words[p] += c;
  return out;
}

inline TensorPolynomial operator*(Complex s, const TensorPolynomial& a) {
  TensorPolynomial out = a;
  for (auto& x : out.algebra) x *= s;
  for (auto& [p, c] : out.words) c *= s;
  return out;
}

/// Product in the tensor algebra: P_v w = [r(w) = v] w, w P_v = [s(w) = v] w,
/// and concatenation of paths (zero when they do not compose).
inline TensorPolynomial multiply(const CorrespondenceContext& ctx, const TensorPolynomial& a,
                                 const TensorPolynomial& b) {
  const auto& g = ctx.graph();
  TensorPolynomial out = TensorPolynomial::zero(ctx);
  for (std::size_t v = 0; v < ctx.vertex_count(); ++v) out.algebra[v] = a.algebra[v] * b.algebra[v];
  for (const auto& [p, c] : b.words) {
    const Complex s = a.algebra[g.edge(p.front()).rng] * c;
    if (s != Complex(0.0)) out.words[p] += s;
  }
  for (const auto& [p, c] : a.words) {
    const Complex s = c * b.algebra[g.edge(p.back()).src];
    if (s != Complex(0.0)) out.words[p] += s;
  }
  for (const auto& [p, c] : a.words)
    for (const auto& [q, d] : b.words) {
      if (g.edge(p.back()).src != g.edge(q.front()).rng) continue;
      Path pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      out.words[pq] += c * d;
    }
  return out;
}

/// L_e = eta* Z_e with Z_e h = P_{s(e)} h placed in the e-block of E (x) H.
inline CMatrix edge_evaluation(const CorrespondenceContext& ctx, const CMatrix& eta, std::size_t e) {
  const std::size_t s = ctx.graph().edge(e).src;
  CMatrix z = CMatrix::Zero(ctx.multiplicity(s), ctx.dim_h());
  z.middleCols(ctx.h_offset(s), ctx.multiplicity(s)).setIdentity();
  return eta.middleCols(ctx.eh_offset(e), ctx.edge_block(e)) * z;
}

/// (sigma x eta*)(poly): a -> sigma(a), e1...en -> L_{e1} ... L_{en}.
inline CMatrix evaluate(const CorrespondenceContext& ctx, const TensorPolynomial& poly,
                        const Intertwiner& eta_star) {
  ctx.space().require_shape(eta_star.matrix());
  if (poly.algebra.size() != ctx.vertex_count())
    throw Error(ErrorCode::ShapeMismatch, "polynomial belongs to a different graph");
  if (eta_star.norm() >= 1.0) throw Error(ErrorCode::OutsideDisc, "|eta*| >= 1");
  CMatrix out = sigma_op(ctx, AlgebraElement{poly.algebra});
  std::vector<CMatrix> l;
  for (std::size_t e = 0; e < ctx.edge_count(); ++e) l.push_back(edge_evaluation(ctx, eta_star.matrix(), e));
  for (const auto& [p, c] : poly.words) {
    CMatrix term = l[p.front()];
    for (std::size_t i = 1; i < p.size(); ++i) term = term * l[p[i]];
    out += c * term;
  }
  return out;
}

/// The polynomial as an operator on the truncated Fock space.
inline CMatrix fock_operator(const FockTruncation& ft, const TensorPolynomial& poly) {
  const auto& ctx = ft.context();
  CMatrix out = fock_algebra_op(ft, AlgebraElement{poly.algebra});
  std::vector<CMatrix> t;
  for (std::size_t e = 0; e < ctx.edge_count(); ++e)
    t.push_back(creation_matrix(ft, CVector::Unit(static_cast<Index>(ctx.edge_count()), static_cast<Index>(e))));
  for (const auto& [p, c] : poly.words) {
    CMatrix term = t[p.front()];
    for (std::size_t i = 1; i < p.size(); ++i) term = term * t[p[i]];
    out += c * term;
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const CorrespondenceContext& ctx, const std::string& text) : ctx_(ctx), s_(text) {}

  TensorPolynomial parse() {
    TensorPolynomial out = TensorPolynomial::zero(ctx_);
    skip();
    Complex sign = 1.0;
    if (peek() == '-') {
      ++pos_;
      sign = -1.0;
    } else if (peek() == '+') {
      ++pos_;
    }
    for (;;) {
      out = out + sign * term();
      skip();
      if (pos_ >= s_.size()) break;
      if (peek() == '+') sign = 1.0;
      else if (peek() == '-') sign = -1.0;
      else fail("expected '+' or '-'");
      ++pos_;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "polynomial, column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double number() {
    skip();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return x;
  }

  /// x | (re) | (im i) | (re+im i) | (re-im i)
  Complex scalar() {
    if (peek() != '(') return number();
    ++pos_;
    double re = number();
    double im = 0.0;
    if (peek() == 'i') {
      ++pos_;
      im = re;
      re = 0.0;
    } else if (peek() == '+' || peek() == '-') {
      im = number();
      expect('i');
    }
    expect(')');
    return {re, im};
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }

  TensorPolynomial term() {
    Complex coeff = 1.0;
    const char c = peek();
    if (c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      coeff = scalar();
      if (peek() != '*') return coeff * TensorPolynomial::from_algebra(
                                            AlgebraElement::constant(ctx_.vertex_count(), 1.0));
      ++pos_;
    }
    const std::size_t mark = pos_;
    const std::string head = identifier();
    if (head == "a" && peek() == '{') return coeff * algebra();
    pos_ = mark;
    Path p;
    for (;;) {
      const std::string name = identifier();
      auto e = ctx_.graph().find_edge(name);
      if (!e) fail("unknown edge '" + name + "'");
      p.push_back(*e);
      if (peek() != '.') break;
      ++pos_;
    }
    return TensorPolynomial::word(ctx_, p, coeff);
  }

  TensorPolynomial algebra() {
    expect('{');
    TensorPolynomial out = TensorPolynomial::zero(ctx_);
    if (peek() == '}') {
      ++pos_;
      return out;
    }
    for (;;) {
      const std::string v = identifier();
      auto idx = ctx_.graph().find_vertex(v);
      if (!idx) fail("unknown vertex '" + v + "'");
      expect(':');
      out.algebra[*idx] = scalar();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return out;
    }
  }

  const CorrespondenceContext& ctx_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar:  poly := ['+'|'-'] term (('+'|'-') term)*
///           term := [scalar '*'] (word | 'a{' v:scalar, ... '}') | scalar
///           word := edge ('.' edge)*        scalar := x | '(' re [('+'|'-') im] 'i'? ')'
/// e.g. `a{v1:1,v2:0} + (2+0i)*e1.e1.e2`. A bare scalar means scalar * 1.
inline TensorPolynomial parse_polynomial(const CorrespondenceContext& ctx, const std::string& text) {
  return detail::PolyParser(ctx, text).parse();
}

}  // namespace discgrp
