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
#include "k3rank/error.hpp"
#include "k3rank/tate.hpp"
#include "reference_data.hpp"

using namespace k3rank;
namespace ref = k3rank::reference;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == ZPoly::from_ints({-1, 1}));
  CHECK(cyclotomic(3) == ZPoly::from_ints({1, 1, 1}));
  CHECK(cyclotomic(15) == ZPoly::from_ints({1, -1, 0, 1, -1, 1, 0, -1, 1}));
  CHECK(scaled_cyclotomic(15, 5) == ref::octic_tate_p5());
  CHECK(scaled_cyclotomic(5, 5) == ref::quartic_p5());
  for (unsigned n = 1; n <= 60; ++n) CHECK(cyclotomic(n).degree() == static_cast<int>(euler_phi(n)));
}

TEST_CASE("tate split of the mod-3 polynomial") {
  auto d = tate_split(WeilPolynomial::make(3, ref::phi_p3(), 1));
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].n == 1);
  CHECK(d.factors[0].multiplicity == 2);
  CHECK(d.factors[1].n == 3);
  CHECK(d.factors[1].poly == ZPoly::from_ints({9, 3, 1}));
  CHECK(d.tate_dimension == 4);
  CHECK(d.remainder == ref::phi_p3_remainder());
  CHECK(d.reassemble() == ZPoly::from_high(ref::phi_p3()));

  auto adm = admissible_dimensions(d, {ZPoly::linear(3)});
  CHECK(adm.dims == std::set<int>{1, 2, 3, 4});
  CHECK(adm.candidates.size() == 4);
  ZPoly quotient = ZPoly::linear(3) * ZPoly::from_ints({9, 3, 1});
  CHECK(is_squarefree(quotient));
}

TEST_CASE("tate split of the mod-5 polynomial") {
  auto d = tate_split(WeilPolynomial::make(5, ref::phi_p5(), 1));
  REQUIRE(d.factors.size() == 3);
  CHECK(d.factors[0].multiplicity == 2);
  CHECK(d.factors[1].n == 5);
  CHECK(d.factors[2].n == 15);
  CHECK(d.tate_dimension == 14);
  CHECK(d.remainder == ref::octic_rest_p5());
  CHECK(d.reassemble() == ZPoly::from_high(ref::phi_p5()));
  auto adm = admissible_dimensions(d, {ZPoly::linear(5)});
  CHECK(adm.dims == std::set<int>{1, 2, 5, 6, 9, 10, 13, 14});
  CHECK(is_squarefree(ZPoly::linear(5) * ref::quartic_p5() * ref::octic_tate_p5()));
  // Everything pinned leaves one dimension.
  auto all = admissible_dimensions(d, {ZPoly::linear(5).pow(2) * ref::quartic_p5() * ref::octic_tate_p5()});
  CHECK(all.dims == std::set<int>{14});
  CHECK(all.pinned_dimension == 14);
  // Pinning nothing leaves a doubled factor.
  CHECK_THROWS_AS(admissible_dimensions(d, {}), Error);
  CHECK_THROWS_AS(admissible_dimensions(d, {ZPoly::linear(7)}), Error);
}

TEST_CASE("synthetic decompositions reassemble") {
  // (t - q)^2 times an irreducible non-Tate factor.
  ZPoly rest = ZPoly::from_high(ref::mpz_list({"1", "5", "21", "90", "297", "891", "2673", "7290", "19683", "59049",
                                               "177147", "590490", "1948617", "5845851", "17537553", "47829690",
                                               "100442349", "215233605", "387420489"}));
  ZPoly phi = ZPoly::linear(3).pow(2) * ZPoly::from_ints({9, 3, 1}) * rest;
  std::vector<mpz_class> a;
  for (int i = phi.degree(); i >= 0; --i) a.push_back(phi.coeff(i));
  auto d = tate_split(WeilPolynomial::make(3, a, 1));
  CHECK(d.reassemble() == phi);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const long q = 7;
    ZPoly p = ZPoly::linear(q).pow(2);
    for (int i = 0; i < 10; ++i) {
      long u = static_cast<long>(rng() % (4 * q + 1)) - 2 * q;
      p = p * ZPoly::from_ints({q * q, -u, 1});
    }
    std::vector<mpz_class> coeffs;
    for (int i = p.degree(); i >= 0; --i) coeffs.push_back(p.coeff(i));
    auto dd = tate_split(WeilPolynomial::make(q, coeffs, 1));
    CHECK(dd.reassemble() == p);
    CHECK(dd.tate_dimension >= 2);
    for (unsigned n = 1; n <= 66; ++n) {
      if (static_cast<int>(euler_phi(n)) <= dd.remainder.degree()) CHECK_FALSE(exact_div(dd.remainder, scaled_cyclotomic(n, q)));
    }
  }
}
