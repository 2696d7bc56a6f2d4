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

// Integral sextic forms and the double plane w^2 = f6(x, y, z) reduced at a
// prime, with a resultant-based smoothness test for the branch curve.

#ifndef K3RANK_SURFACE_HPP_
#define K3RANK_SURFACE_HPP_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3rank/forms.hpp"

namespace k3rank {

class SexticForm {
 public:
  static constexpr int kDegree = 6;
  static constexpr int kTerms = 28;

  SexticForm();
  // Lines "coefficient a b c" for the monomial x^a y^b z^c; '#' starts a
  // comment. Missing monomials are zero.
  static SexticForm parse(const std::string& text);
  static SexticForm load(const std::string& path);

  const mpz_class& coeff(int a, int b) const;
  void set(int a, int b, const mpz_class& c);
  const std::array<mpz_class, kTerms>& coeffs() const { return c_; }
  bool is_zero() const;
  // Canonical text, one nonzero monomial per line in graded-lex order.
  std::string to_text() const;
  bool operator==(const SexticForm& o) const { return c_ == o.c_; }

  // Reduction into any field of characteristic p.
  TernaryForm reduce(const FieldPtr& field) const;

 private:
  std::array<mpz_class, kTerms> c_;
};

// Shared "coefficient a b c" reader for forms of any degree, graded-lex
// coefficient vector.
std::vector<mpz_class> parse_monomial_lines(const std::string& text, int degree);
// Same format reduced into a field of characteristic p.
TernaryForm parse_plane_form(const std::string& text, int degree, const FieldPtr& field);
TernaryForm load_plane_form(const std::string& path, int degree, const FieldPtr& field);

struct SingularWitness {
  // Explicit coordinates when the point is realized in a field within the
  // cardinality limit; otherwise only the description is set.
  std::optional<Point3> point;
  FieldPtr field;
  int field_degree = 0;
  std::string description;
};

struct ReductionReport {
  bool good = false;
  std::optional<SingularWitness> witness;
};

class SurfaceModel {
 public:
  SurfaceModel(SexticForm form, std::uint32_t p, const FieldOptions& options = {});

  const SexticForm& form() const { return form_; }
  std::uint32_t p() const { return p_; }
  const FieldPtr& prime_field() const { return fp_; }
  const FieldOptions& options() const { return options_; }
  // f6 mod p over F_p.
  const TernaryForm& reduced() const { return reduced_; }
  // f6 mod p with coefficients lifted into an extension of F_p.
  TernaryForm over(const FieldPtr& field) const;

  // Value at the representative with first nonzero coordinate 1.
  FElem evaluate(const FieldPtr& field, const Point3& point) const;

 private:
  SexticForm form_;
  std::uint32_t p_;
  FieldOptions options_;
  FieldPtr fp_;
  TernaryForm reduced_;
};

// Smoothness of f6 = 0 over the algebraic closure of F_p. Throws kDegenerate
// when every partial derivative vanishes identically.
ReductionReport good_reduction(const SurfaceModel& model, std::uint64_t seed = 0);

// Oracle: all common zeros of f6 and its partials in P^2(F_{p^k}).
std::vector<Point3> brute_force_singular_points(const SurfaceModel& model, const FieldPtr& field);

// Every projective point over the field, normalized, in canonical order.
std::vector<Point3> projective_points(const FieldPtr& field);

}  // namespace k3rank

#endif  // K3RANK_SURFACE_HPP_
