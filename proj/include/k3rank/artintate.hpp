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

// Discriminant square classes of hypothetical Picard lattices from the
// leading Taylor coefficient of Phi at q:
//   lim_{t -> q'} Phi_k(t) / (t - q')^rho = q'^{21 - rho} * #Br * |disc|,
// with #Br a perfect square and q' = q^k.

#ifndef K3RANK_ARTINTATE_HPP_
#define K3RANK_ARTINTATE_HPP_

#include <gmpxx.h>

#include <string>

#include "k3rank/weil.hpp"

namespace k3rank {

struct ATResult {
  unsigned k = 1;
  mpz_class field_size;  // q' = q^k
  int rho = 0;
  mpz_class limit;
  // p-adic bookkeeping of limit / q'^{21 - rho}.
  std::uint32_t p = 0;
  long limit_valuation = 0;   // v_p(limit)
  long normalization = 0;     // v_p(q'^{21 - rho})
  mpq_class normalized;       // limit / q'^{21 - rho}
  mpz_class disc_class;       // (-1)^{rho - 1} * square class
  bool conditional = true;

  // "v_p(limit) = a, v_p(q'^(21-rho)) = b, residual p^(a-b)".
  std::string exponent_trail() const;
};

// Throws kInconsistent ("order of vanishing != rho") when the multiplicity
// of (t - q^k) in the base-changed polynomial differs from rho.
mpz_class at_limit(const WeilPolynomial& w, unsigned k, int rho);
ATResult disc_class(const WeilPolynomial& w, unsigned k, int rho, bool conditional);
// Extraction step alone: (-1)^{rho-1} * square class of value / q'^{21-rho}.
mpz_class class_from_limit(const mpz_class& limit, const mpz_class& field_size, int rho);

}  // namespace k3rank

#endif  // K3RANK_ARTINTATE_HPP_
