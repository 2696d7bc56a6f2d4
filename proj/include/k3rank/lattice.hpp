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

// Gram-matrix invariants: rank, determinant, signature, square classes of
// discriminants and the Frobenius action on an explicit sublattice.

#ifndef K3RANK_LATTICE_HPP_
#define K3RANK_LATTICE_HPP_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

#include "k3rank/linalg.hpp"
#include "k3rank/zpoly.hpp"

namespace k3rank {

struct LatticeInfo {
  int rank = 0;
  std::vector<int> basis;  // generator indices, greedy in input order
  ZMatrix basis_gram;
  mpz_class basis_det;
  // Determinant of the lattice generated by all inputs (the basis lattice
  // has index sqrt(basis_det / det) in it).
  mpz_class det;
  int positive = 0;
  int negative = 0;
};

ZMatrix to_zmatrix(const std::vector<std::vector<long long>>& g);

// Throws kDegenerate when the form restricted to the span of the
// generators is degenerate (the Gram of a maximal independent subset is
// singular) and kGeometry when the signature is not (1, r - 1).
LatticeInfo analyze_gram(const ZMatrix& gram);

// Inertia (positive, negative, zero) of a symmetric rational matrix.
std::array<int, 3> inertia(const QMatrix& m);

// Sign times squarefree part. Trial division to 10^6; a cofactor that is not
// a perfect square is taken as prime, which is only certain below 10^18, so
// larger unresolved cofactors raise kLimit.
mpz_class square_class(const mpz_class& n);
// a / b is a rational square (a, b nonzero).
bool classes_equal(const mpz_class& a, const mpz_class& b);
// Smallest odd prime l not dividing a b at which the Legendre symbols of a
// and b differ; 0 if none below the bound.
std::uint64_t witness_prime(const mpz_class& a, const mpz_class& b, std::uint64_t bound = 1000000);
bool validate_witness(const mpz_class& a, const mpz_class& b, std::uint64_t l);

// Characteristic polynomial of q * Frob on the span of the generators,
// where Frob permutes them by perm (perm[i] = index of the image of i).
// The result has degree equal to the rank and integral coefficients.
ZPoly frobenius_charpoly(const ZMatrix& gram, const std::vector<int>& perm, const mpz_class& q);

// Principal submatrix on the given generator indices.
ZMatrix submatrix(const ZMatrix& gram, const std::vector<int>& idx);

}  // namespace k3rank

#endif  // K3RANK_LATTICE_HPP_
