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

// Univariate polynomials over a FieldCtx: Euclidean toolkit, squarefree
// decomposition, Cantor-Zassenhaus factorization and resultants.

#ifndef K3RANK_UNIPOLY_HPP_
#define K3RANK_UNIPOLY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "k3rank/ffield.hpp"

namespace k3rank {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(FieldPtr field);
  UniPoly(FieldPtr field, std::vector<FElem> coeffs);

  static UniPoly constant(FieldPtr field, FElem c);
  static UniPoly monomial(FieldPtr field, FElem c, std::size_t degree);
  static UniPoly x(FieldPtr field);
  // Coefficients from F_p residues, low-to-high.
  static UniPoly from_ints(FieldPtr field, const std::vector<long long>& coeffs);

  const FieldPtr& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<FElem>& coeffs() const { return coeffs_; }
  FElem coeff(std::size_t i) const;
  const FElem& lead() const { return coeffs_.back(); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

  UniPoly scaled(const FElem& c) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  UniPoly shifted(std::size_t k) const;  // times x^k
  FElem eval(const FElem& v) const;
  // Apply e -> e^(p^times) to every coefficient.
  UniPoly frobenius(std::uint32_t times = 1) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();

  FieldPtr field_;
  std::vector<FElem> coeffs_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod);
// Canonical order: degree first, then coefficients from the top.
bool canonical_less(const UniPoly& a, const UniPoly& b);

struct PolyFactor {
  UniPoly poly;
  int multiplicity = 1;
};

struct Factorization {
  FElem unit;
  std::vector<PolyFactor> factors;

  UniPoly expand(const FieldPtr& field) const;
};

// f = unit * prod g_i^{m_i}, g_i monic squarefree and pairwise coprime.
Factorization squarefree_decomposition(const UniPoly& f);
// Monic irreducible factors with multiplicities, in canonical order.
Factorization factorize(const UniPoly& f, std::uint64_t seed = 0);
std::vector<UniPoly> distinct_degree_parts(const UniPoly& f);  // index d-1 -> product of degree-d irreducibles
std::vector<UniPoly> equal_degree_split(const UniPoly& f, int d, std::uint64_t seed);
// Distinct roots in the coefficient field, canonical order.
std::vector<FElem> roots(const UniPoly& f, std::uint64_t seed = 0);
bool is_irreducible(const UniPoly& f);
FElem resultant(const UniPoly& a, const UniPoly& b);

// Ring homomorphism src -> dst sending the basis generator of src to a root
// of src.modulus in dst. The default root is the smallest in canonical order.
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst);
  Embedding(FieldPtr src, FieldPtr dst, FElem image_of_gen);

  const FieldPtr& src() const { return src_; }
  const FieldPtr& dst() const { return dst_; }
  const FElem& image_of_gen() const { return image_; }
  FElem operator()(const FElem& e) const;
  UniPoly operator()(const UniPoly& f) const;

 private:
  FieldPtr src_;
  FieldPtr dst_;
  FElem image_;
  std::vector<FElem> powers_;  // image^i, i < src degree
};

FElem embed(const FieldPtr& src, const FieldPtr& dst, const FElem& e);

}  // namespace k3rank

#endif  // K3RANK_UNIPOLY_HPP_
