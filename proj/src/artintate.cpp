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

#include "k3rank/artintate.hpp"

#include "k3rank/error.hpp"
#include "k3rank/lattice.hpp"

namespace k3rank {

namespace {

mpz_class power(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

long valuation(mpz_class v, std::uint32_t p) {
  if (v == 0) fail(ErrorCode::kInvalidArgument, "valuation of zero");
  long e = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

std::uint32_t prime_of(const mpz_class& q) {
  mpz_class p = 2;
  while (!mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return static_cast<std::uint32_t>(p.get_ui());
}

}  // namespace

mpz_class at_limit(const WeilPolynomial& w, unsigned k, int rho) {
  if (rho < 1 || rho > kWeilDegree) fail(ErrorCode::kInvalidArgument, "rank hypothesis out of range");
  WeilPolynomial b = base_change(w, k);
  ZPoly phi = b.poly();
  const ZPoly lin = ZPoly::linear(b.q);
  for (int i = 0; i < rho; ++i) {
    auto quo = exact_div(phi, lin);
    if (!quo) {
      fail(ErrorCode::kInconsistent, "order of vanishing != rho: (t - " + b.q.get_str() + ") divides Phi only " +
                                         std::to_string(i) + " times, rho = " + std::to_string(rho));
    }
    phi = *quo;
  }
  mpz_class value = phi.eval(b.q);
  if (value == 0) {
    fail(ErrorCode::kInconsistent, "order of vanishing != rho: (t - " + b.q.get_str() + ") divides Phi more than " +
                                       std::to_string(rho) + " times");
  }
  return value;
}

mpz_class class_from_limit(const mpz_class& limit, const mpz_class& field_size, int rho) {
  if (limit == 0) fail(ErrorCode::kInvalidArgument, "zero limit");
  mpq_class v(abs(limit), power(field_size, static_cast<unsigned long>(21 - rho)));
  v.canonicalize();
  // num / den and num * den have the same square class.
  mpz_class c = square_class(mpz_class(v.get_num() * v.get_den()));
  return (rho % 2 == 1) ? c : mpz_class(-c);
}

ATResult disc_class(const WeilPolynomial& w, unsigned k, int rho, bool conditional) {
  ATResult r;
  r.k = k;
  r.rho = rho;
  r.field_size = power(w.q, k);
  r.limit = at_limit(w, k, rho);
  r.p = prime_of(w.q);
  r.limit_valuation = valuation(r.limit, r.p);
  r.normalization = valuation(r.field_size, r.p) * (21 - rho);
  r.normalized = mpq_class(r.limit, power(r.field_size, static_cast<unsigned long>(21 - rho)));
  r.normalized.canonicalize();
  r.disc_class = class_from_limit(r.limit, r.field_size, rho);
  r.conditional = conditional;
  return r;
}

std::string ATResult::exponent_trail() const {
  return "v_" + std::to_string(p) + "(limit) = " + std::to_string(limit_valuation) + ", v_" + std::to_string(p) +
         "(q'^(21-rho)) = " + std::to_string(normalization) + ", residual " + std::to_string(p) + "^" +
         std::to_string(limit_valuation - normalization);
}

}  // namespace k3rank
