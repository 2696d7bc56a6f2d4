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

// The degree-22 characteristic polynomial of Frobenius on H^2 of a K3
// surface: Newton identities, reconstruction from traces and base change.

#ifndef K3RANK_WEIL_HPP_
#define K3RANK_WEIL_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "k3rank/zpoly.hpp"

namespace k3rank {

constexpr int kWeilDegree = 22;

// Phi(t) = sum_i a[i] t^{22-i}, a[0] = 1, with
// a[22-i] = epsilon q^{22-2i} a[i] and Phi(q) = 0.
struct WeilPolynomial {
  mpz_class q;
  std::vector<mpz_class> a;
  int epsilon = 1;

  // Validates every invariant; throws kInconsistent otherwise.
  static WeilPolynomial make(const mpz_class& q, std::vector<mpz_class> a, int epsilon);
  ZPoly poly() const;
  bool operator==(const WeilPolynomial& o) const { return q == o.q && a == o.a && epsilon == o.epsilon; }
};

// a_1..a_m from t_1..t_m by t_k + a_1 t_{k-1} + ... + a_{k-1} t_1 + k a_k = 0.
std::vector<mpz_class> newton_prefix(const std::vector<mpz_class>& traces, int degree = kWeilDegree);
// Power sums t_1..t_m of the monic polynomial with coefficients 1, a_1..a_d.
std::vector<mpz_class> power_sums(const std::vector<mpz_class>& a_tail, std::size_t m);
std::vector<mpz_class> power_sums(const WeilPolynomial& w, std::size_t m);

// True iff every root of phi has absolute value q. phi must be monic of even
// degree with the functional equation of sign epsilon.
bool roots_on_weil_circle(const ZPoly& phi, const mpz_class& q, int epsilon);

struct ReconstructReport {
  // One line per sign describing why it was accepted or rejected.
  std::vector<std::string> notes;
  int traces_used = 0;
  int traces_checked = 0;
};

// traces[i] = t_{i+1}. Throws kInsufficientData, kAmbiguous or kInconsistent.
WeilPolynomial reconstruct(const std::vector<mpz_class>& traces, const mpz_class& q,
                           const std::vector<ZPoly>& known_factors = {}, ReconstructReport* report = nullptr);

// Characteristic polynomial of Frob^k.
WeilPolynomial base_change(const WeilPolynomial& w, unsigned k);

// Multiplicity of (t - root) in phi.
int root_multiplicity(const ZPoly& phi, const mpz_class& root);

}  // namespace k3rank

#endif  // K3RANK_WEIL_HPP_
