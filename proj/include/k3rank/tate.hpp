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

// Tate part of a Weil polynomial: factors q^{phi(n)} Phi_n(t/q) whose roots
// are q times roots of unity, and the admissible-submodule bookkeeping built
// on them.

#ifndef K3RANK_TATE_HPP_
#define K3RANK_TATE_HPP_

#include <gmpxx.h>

#include <set>
#include <vector>

#include "k3rank/weil.hpp"

namespace k3rank {

ZPoly cyclotomic(unsigned n);
// q^{phi(n)} Phi_n(t/q).
ZPoly scaled_cyclotomic(unsigned n, const mpz_class& q);
unsigned euler_phi(unsigned n);

struct TateFactor {
  unsigned n = 0;  // cyclotomic index
  ZPoly poly;
  int multiplicity = 1;

  int degree() const { return poly.degree(); }
};

struct TateDecomposition {
  mpz_class q;
  std::vector<TateFactor> factors;  // ascending n
  ZPoly remainder;
  int tate_dimension = 0;

  // prod factors^mult * remainder.
  ZPoly reassemble() const;
};

TateDecomposition tate_split(const WeilPolynomial& w);

struct AdmissibleCandidate {
  int dimension = 0;
  // Indices into AdmissibleDims::free_factors.
  std::vector<std::size_t> subset;
  // Pinned part times the chosen factors.
  ZPoly charpoly;
  // Cyclotomic indices occurring in charpoly, with multiplicity.
  std::vector<unsigned> indices;
};

struct AdmissibleDims {
  std::vector<TateFactor> pinned;       // with multiplicities
  std::vector<TateFactor> free_factors; // each of multiplicity 1
  int pinned_dimension = 0;
  std::vector<AdmissibleCandidate> candidates;  // by dimension, then subset
  std::set<int> dims;

  std::vector<const AdmissibleCandidate*> of_dimension(int d) const;
};

constexpr std::size_t kMaxAdmissibleSubsets = std::size_t{1} << 16;

// pinned: polynomials known to lie in the Picard part, each a product of
// Tate factors; pass {t - q} for the hyperplane class alone.
AdmissibleDims admissible_dimensions(const TateDecomposition& d, const std::vector<ZPoly>& pinned);

}  // namespace k3rank

#endif  // K3RANK_TATE_HPP_
