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

#include "k3rank/forms.hpp"

#include <sstream>

#include "k3rank/error.hpp"

namespace k3rank {

BinaryForm::BinaryForm(UniPoly p, int d) : poly(std::move(p)), degree(d) {
  if (poly.degree() > degree) fail(ErrorCode::kInternal, "binary form exceeds its declared degree");
}

FElem BinaryForm::eval(const FElem& s, const FElem& t) const {
  const FieldCtx& f = ctx();
  FElem acc = f.zero();
  // Horner in t, weighting coefficient i by s^{d-i}.
  std::vector<FElem> s_pows(degree + 1, f.one());
  for (int i = 1; i <= degree; ++i) s_pows[i] = f.mul(s_pows[i - 1], s);
  for (int i = degree; i >= 0; --i) {
    acc = f.add(f.mul(acc, t), f.mul(poly.coeff(i), s_pows[degree - i]));
  }
  return acc;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  return {poly * o.poly, degree + o.degree};
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  if (degree != o.degree) fail(ErrorCode::kInternal, "adding binary forms of different degree");
  return {poly + o.poly, degree};
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const {
  if (degree != o.degree) fail(ErrorCode::kInternal, "subtracting binary forms of different degree");
  return {poly - o.poly, degree};
}

int BinaryForm::distinct_root_count() const {
  if (is_zero()) fail(ErrorCode::kInvalidArgument, "root count of the zero form");
  int count = infinity_multiplicity() > 0 ? 1 : 0;
  if (poly.degree() > 0) {
    for (const auto& part : squarefree_decomposition(poly).factors) count += part.poly.degree();
  }
  return count;
}

TernaryForm::TernaryForm(FieldPtr field, int degree)
    : field_(std::move(field)), degree_(degree),
      coeffs_(monomial_count(degree), field_->zero()) {}

int TernaryForm::index_of(int degree, int a, int b) {
  // Monomials with first exponent > a come first: sum_{a'>a} (d - a' + 1).
  int before = 0;
  for (int ap = degree; ap > a; --ap) before += degree - ap + 1;
  return before + (degree - a - b);
}

std::array<int, 3> TernaryForm::exponents_of(int degree, int index) {
  for (int a = degree; a >= 0; --a) {
    int row = degree - a + 1;
    if (index < row) {
      int b = degree - a - index;
      return {a, b, degree - a - b};
    }
    index -= row;
  }
  fail(ErrorCode::kInternal, "monomial index out of range");
}

bool TernaryForm::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!field_->is_zero(c)) return false;
  }
  return true;
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  if (degree_ != o.degree_) fail(ErrorCode::kInternal, "adding forms of different degree");
  TernaryForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
  if (degree_ != o.degree_) fail(ErrorCode::kInternal, "subtracting forms of different degree");
  TernaryForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_->sub(coeffs_[i], o.coeffs_[i]);
  return r;
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  TernaryForm r(field_, degree_ + o.degree_);
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    if (field_->is_zero(coeffs_[i])) continue;
    auto e1 = exponents_of(degree_, i);
    for (int j = 0; j < static_cast<int>(o.coeffs_.size()); ++j) {
      if (field_->is_zero(o.coeffs_[j])) continue;
      auto e2 = exponents_of(o.degree_, j);
      int k = index_of(r.degree_, e1[0] + e2[0], e1[1] + e2[1]);
      r.coeffs_[k] = field_->add(r.coeffs_[k], field_->mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return r;
}

TernaryForm TernaryForm::scaled(const FElem& c) const {
  TernaryForm r = *this;
  for (auto& v : r.coeffs_) v = field_->mul(v, c);
  return r;
}

TernaryForm TernaryForm::normalized() const {
  for (const auto& c : coeffs_) {
    if (!field_->is_zero(c)) return scaled(field_->inv(c));
  }
  return *this;
}

std::optional<TernaryForm> TernaryForm::exact_div(const TernaryForm& d) const {
  if (d.is_zero()) fail(ErrorCode::kInvalidArgument, "form division by zero");
  if (d.degree_ > degree_) {
    if (is_zero()) return TernaryForm(field_, 0);
    return std::nullopt;
  }
  int lead_d = 0;
  while (field_->is_zero(d.coeffs_[lead_d])) ++lead_d;
  const auto ed = exponents_of(d.degree_, lead_d);
  const FElem inv_lead = field_->inv(d.coeffs_[lead_d]);
  TernaryForm rem = *this;
  TernaryForm quo(field_, degree_ - d.degree_);
  for (int i = 0; i < static_cast<int>(rem.coeffs_.size()); ++i) {
    if (field_->is_zero(rem.coeffs_[i])) continue;
    auto er = exponents_of(degree_, i);
    if (er[0] < ed[0] || er[1] < ed[1] || er[2] < ed[2]) return std::nullopt;
    FElem c = field_->mul(rem.coeffs_[i], inv_lead);
    int qa = er[0] - ed[0], qb = er[1] - ed[1];
    quo.set(qa, qb, c);
    for (int j = 0; j < static_cast<int>(d.coeffs_.size()); ++j) {
      if (field_->is_zero(d.coeffs_[j])) continue;
      auto e = exponents_of(d.degree_, j);
      int k = index_of(degree_, e[0] + qa, e[1] + qb);
      rem.coeffs_[k] = field_->sub(rem.coeffs_[k], field_->mul(c, d.coeffs_[j]));
    }
  }
  return quo;
}

FElem TernaryForm::eval(const Point3& p) const {
  const FieldCtx& f = *field_;
  std::vector<std::array<FElem, 3>> pw(degree_ + 1);
  pw[0] = {f.one(), f.one(), f.one()};
  for (int i = 1; i <= degree_; ++i) {
    for (int v = 0; v < 3; ++v) pw[i][v] = f.mul(pw[i - 1][v], p[v]);
  }
  FElem acc = f.zero();
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    if (f.is_zero(coeffs_[i])) continue;
    auto e = exponents_of(degree_, i);
    acc = f.add(acc, f.mul(coeffs_[i], f.mul(pw[e[0]][0], f.mul(pw[e[1]][1], pw[e[2]][2]))));
  }
  return acc;
}

TernaryForm TernaryForm::partial(int var) const {
  if (degree_ == 0) return TernaryForm(field_, 0);
  TernaryForm r(field_, degree_ - 1);
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    auto e = exponents_of(degree_, i);
    if (e[var] == 0) continue;
    FElem c = field_->scale(coeffs_[i], static_cast<std::uint32_t>(e[var] % field_->characteristic()));
    e[var] -= 1;
    r.set(e[0], e[1], c);
  }
  return r;
}

BinaryForm TernaryForm::compose(const BinaryForm& X, const BinaryForm& Y, const BinaryForm& Z) const {
  const int e = X.degree;
  std::array<std::vector<UniPoly>, 3> pw;
  const std::array<const BinaryForm*, 3> comps{&X, &Y, &Z};
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(UniPoly::constant(field_, field_->one()));
    for (int i = 1; i <= degree_; ++i) pw[v].push_back(pw[v].back() * comps[v]->poly);
  }
  UniPoly acc(field_);
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    if (field_->is_zero(coeffs_[i])) continue;
    auto ex = exponents_of(degree_, i);
    acc = acc + (pw[0][ex[0]] * pw[1][ex[1]] * pw[2][ex[2]]).scaled(coeffs_[i]);
  }
  return {acc, degree_ * e};
}

TernaryForm TernaryForm::frobenius(std::uint32_t times) const {
  TernaryForm r = *this;
  for (auto& c : r.coeffs_) c = field_->frobenius(c, times);
  return r;
}

TernaryForm TernaryForm::mapped(const Embedding& emb) const {
  TernaryForm r(emb.dst(), degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = emb(coeffs_[i]);
  return r;
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    if (field_->is_zero(coeffs_[i])) continue;
    auto e = exponents_of(degree_, i);
    if (!first) os << " + ";
    first = false;
    os << field_->to_string(coeffs_[i]);
    const char* names[3] = {"x", "y", "z"};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      os << "*" << names[v];
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return first ? "0" : os.str();
}

Point3 normalize_point(const FieldCtx& f, const Point3& p) {
  for (int i = 0; i < 3; ++i) {
    if (!f.is_zero(p[i])) {
      FElem inv = f.inv(p[i]);
      return {f.mul(p[0], inv), f.mul(p[1], inv), f.mul(p[2], inv)};
    }
  }
  fail(ErrorCode::kInvalidArgument, "zero vector is not a projective point");
}

std::string point_to_string(const FieldCtx& f, const Point3& p) {
  return "[" + f.to_string(p[0]) + " : " + f.to_string(p[1]) + " : " + f.to_string(p[2]) + "]";
}

}  // namespace k3rank
