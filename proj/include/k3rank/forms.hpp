/* Copyright 2026 The k3rank Authors.

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

// Homogeneous forms over a FieldCtx: ternary forms F(x, y, z) for plane
// curves and binary forms B(s, t) for parametrizations of P^1.

#ifndef K3RANK_FORMS_HPP_
#define K3RANK_FORMS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3rank/unipoly.hpp"

namespace k3rank {

using Point3 = std::array<FElem, 3>;

// B(s, t) = sum_i poly_i s^{degree-i} t^i. The point (0:1) is a root of
// multiplicity degree - deg(poly).
struct BinaryForm {
  UniPoly poly;
  int degree = 0;

  BinaryForm() = default;
  BinaryForm(UniPoly p, int d);

  const FieldCtx& ctx() const { return poly.ctx(); }
  bool is_zero() const { return poly.is_zero(); }
  int infinity_multiplicity() const { return is_zero() ? 0 : degree - poly.degree(); }
  FElem eval(const FElem& s, const FElem& t) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm scaled(const FElem& c) const { return {poly.scaled(c), degree}; }
  // Number of distinct roots on P^1 over the algebraic closure.
  int distinct_root_count() const;
};

class TernaryForm {
 public:
  TernaryForm() = default;
  TernaryForm(FieldPtr field, int degree);

  static int monomial_count(int degree) { return (degree + 1) * (degree + 2) / 2; }
  // Graded-lex position of x^a y^b z^{d-a-b}: a descending, then b descending.
  static int index_of(int degree, int a, int b);
  static std::array<int, 3> exponents_of(int degree, int index);

  const FieldPtr& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }
  int degree() const { return degree_; }
  const std::vector<FElem>& coeffs() const { return coeffs_; }
  const FElem& coeff(int a, int b) const { return coeffs_[index_of(degree_, a, b)]; }
  void set(int a, int b, FElem c) { coeffs_[index_of(degree_, a, b)] = std::move(c); }
  bool is_zero() const;

  TernaryForm operator+(const TernaryForm& o) const;
  TernaryForm operator-(const TernaryForm& o) const;
  TernaryForm operator*(const TernaryForm& o) const;
  bool operator==(const TernaryForm& o) const { return degree_ == o.degree_ && coeffs_ == o.coeffs_; }
  TernaryForm scaled(const FElem& c) const;
  // Scaled so that the first nonzero coefficient is 1.
  TernaryForm normalized() const;
  std::optional<TernaryForm> exact_div(const TernaryForm& d) const;

  FElem eval(const Point3& p) const;
  TernaryForm partial(int var) const;  // 0 = x, 1 = y, 2 = z
  // F(X(s,t), Y(s,t), Z(s,t)).
  BinaryForm compose(const BinaryForm& X, const BinaryForm& Y, const BinaryForm& Z) const;
  TernaryForm frobenius(std::uint32_t times = 1) const;
  TernaryForm mapped(const Embedding& emb) const;
  std::string to_string() const;

 private:
  FieldPtr field_;
  int degree_ = 0;
  std::vector<FElem> coeffs_;
};

// First nonzero coordinate scaled to 1.
Point3 normalize_point(const FieldCtx& f, const Point3& p);
std::string point_to_string(const FieldCtx& f, const Point3& p);

}  // namespace k3rank

#endif  // K3RANK_FORMS_HPP_
