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

#include <random>

#include "doctest.h"
#include "k3rank/artintate.hpp"
#include "k3rank/error.hpp"
#include "k3rank/lattice.hpp"
#include "reference_data.hpp"

using namespace k3rank;
namespace ref = k3rank::reference;

namespace {

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long long legendre(long long a, long long l) {
  a %= l;
  if (a < 0) a += l;
  if (a == 0) return 0;
  long long r = 1, b = a, e = (l - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % l;
    b = b * b % l;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("square classes") {
  CHECK(square_class(96) == 6);
  CHECK(square_class(-489) == -489);
  CHECK(square_class(-81) == -1);
  CHECK(square_class(-5 * 49) == -5);
  CHECK(square_class(1) == 1);
  // Large prime cofactor above the trial-division bound.
  mpz_class big("1000003");
  CHECK(square_class(big * big * 7) == 7);
  CHECK(square_class(mpz_class(1000003) * 1000033) == mpz_class(1000003) * 1000033);
  CHECK_THROWS_AS(square_class(0), Error);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    long r = static_cast<long>(rng() % 2000) + 1;
    if (rng() & 1) r = -r;
    long s = static_cast<long>(rng() % 500) + 1;
    CHECK(square_class(mpz_class(static_cast<long>(r)) * s * s) == square_class(static_cast<long>(r)));
    long t = static_cast<long>(rng() % 2000) + 1;
    bool eq = square_class(static_cast<long>(r)) == square_class(static_cast<long>(t));
    CHECK(classes_equal(static_cast<long>(r), static_cast<long>(t)) == eq);
  }
}

TEST_CASE("witness primes") {
  CHECK(witness_prime(-489, -5) == 17);
  CHECK(validate_witness(-489, -5, 17));
  CHECK_FALSE(validate_witness(-489, -5, 13));
  CHECK_FALSE(validate_witness(-489, -5, 15));
  CHECK_FALSE(validate_witness(-489, -5, 163));
  CHECK(witness_prime(6, 6) == 0);
  std::uint64_t w = witness_prime(2, -2);
  CHECK(w == 3);
  for (long a : {2L, 3L, -1L, 7L, -489L, 10L}) {
    for (long b : {5L, -5L, 11L, 6L}) {
      std::uint64_t l = witness_prime(a, b);
      if (classes_equal(a, b)) {
        CHECK(l == 0);
        continue;
      }
      REQUIRE(l != 0);
      CHECK(is_prime_small(l));
      CHECK(a % static_cast<long>(l) != 0);
      CHECK(b % static_cast<long>(l) != 0);
      CHECK(legendre(a * b, static_cast<long long>(l)) == -1);
      for (std::uint64_t m = 3; m < l; m += 2) CHECK_FALSE(validate_witness(a, b, m));
    }
  }
}

TEST_CASE("gram analysis") {
  // H, C1+, C1-, C2- of a conic configuration: C1+ + C1- = 2H.
  ZMatrix g = to_zmatrix({{2, 2, 2, 2}, {2, -2, 6, 0}, {2, 6, -2, 4}, {2, 0, 4, -2}});
  auto info = analyze_gram(g);
  CHECK(info.rank == 3);
  CHECK(info.positive == 1);
  CHECK(info.negative == 2);
  CHECK(square_class(info.det) == 6);
  CHECK(bareiss_det(submatrix(g, {1, 2, 3})) == 96);
  CHECK(info.det == 24);

  // Lines: det -5 for (H, L+).
  auto l = analyze_gram(to_zmatrix({{2, 1, 1}, {1, -2, 3}, {1, 3, -2}}));
  CHECK(l.rank == 2);
  CHECK(l.det == -5);

  CHECK_THROWS_AS(analyze_gram(to_zmatrix({{2, 0}, {0, 2}})), Error);
  CHECK_THROWS_AS(analyze_gram(to_zmatrix({{0, 0}, {0, 0}})), Error);
  CHECK_THROWS_AS(analyze_gram(to_zmatrix({{2, 1}, {0, 2}})), Error);

  auto in = inertia({{0, 1}, {1, 0}});
  CHECK(in == std::array<int, 3>{1, 1, 0});
}

TEST_CASE("frobenius charpoly of a permutation module") {
  // H fixed, three disjoint (-2)-curves permuted cyclically.
  ZMatrix g = to_zmatrix({{2, 0, 0, 0}, {0, -2, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, -2}});
  auto cp = frobenius_charpoly(g, {0, 2, 3, 1}, 3);
  CHECK(cp == ZPoly::from_ints({-3, 1}) * ZPoly::from_ints({-27, 0, 0, 1}));
  // A permutation that breaks the form is rejected.
  ZMatrix g2 = to_zmatrix({{2, 1}, {1, -2}});
  CHECK_THROWS_AS(frobenius_charpoly(g2, {1, 0}, 3), Error);
}

TEST_CASE("artin-tate classes") {
  auto w3 = WeilPolynomial::make(3, ref::phi_p3(), 1);
  auto w5 = WeilPolynomial::make(5, ref::phi_p5(), 1);
  auto a = disc_class(w3, 1, 2, false);
  CHECK(a.disc_class == -489);
  CHECK(a.limit_valuation == 20);
  CHECK(a.normalization == 19);
  CHECK(disc_class(w3, 3, 4, false).disc_class == -163);
  CHECK(disc_class(w5, 1, 2, true).disc_class == -5);
  auto c6 = disc_class(w5, 5, 6, true);
  CHECK(c6.disc_class == -1);
  CHECK(c6.conditional);
  CHECK(disc_class(w5, 15, 14, true).disc_class == -1);
  CHECK(a.exponent_trail() == "v_3(limit) = 20, v_3(q'^(21-rho)) = 19, residual 3^1");

  // Multiplicity mismatch in both directions.
  CHECK_THROWS_AS(at_limit(w3, 1, 1), Error);
  CHECK_THROWS_AS(at_limit(w3, 1, 3), Error);
  try {
    at_limit(w3, 1, 3);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("order of vanishing") != std::string::npos);
  }

  // Synthetic (t - q)^2 R: the limit is R(q) after base change k = 1.
  auto phi = w3.poly();
  auto rest = *exact_div(*exact_div(phi, ZPoly::linear(3)), ZPoly::linear(3));
  CHECK(at_limit(w3, 1, 2) == rest.eval(3));

  // Even powers of any prime do not move the class.
  for (long sq : {4L, 9L, 25L, 49L, 121L}) {
    CHECK(class_from_limit(a.limit * sq, 3, 2) == -489);
  }
  CHECK(class_from_limit(a.limit * 3, 3, 2) == -163);
  CHECK(class_from_limit(a.limit, 3, 3) == 163);
}
