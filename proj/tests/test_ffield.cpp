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
#include <set>

#include "doctest.h"
#include "k3rank/error.hpp"
#include "k3rank/ffield.hpp"
#include "k3rank/unipoly.hpp"

using namespace k3rank;

TEST_CASE("prime and extension fields") {
  auto f3 = FieldCtx::make(3, 1);
  CHECK(f3->size() == 3);
  CHECK(f3->modulus() == std::vector<std::uint32_t>{0, 1});
  auto f27 = FieldCtx::make(3, 3);
  CHECK(f27->size() == 27);
  for (std::uint64_t c = 0; c < 27; ++c) {
    FElem e = f27->from_code(c);
    CHECK(f27->pow(e, std::uint64_t{27}) == e);
  }
  CHECK_THROWS_AS(FieldCtx::make(2, 1), Error);
  CHECK_THROWS_AS(FieldCtx::make(5, 9), Error);
}

TEST_CASE("modulus is the smallest irreducible") {
  auto f9 = FieldCtx::make(3, 2);
  // x^2 + 1 is the first monic irreducible quadratic over F_3 in tuple order.
  CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(is_irreducible_mod_p(3, f9->modulus()));
  CHECK_FALSE(is_irreducible_mod_p(3, {2, 0, 1}));
}

TEST_CASE("antilog table of F_{5^8} is a bijection") {
  auto f = FieldCtx::make(5, 8);
  REQUIRE(f->has_tables());
  const LogTables* t = f->tables();
  CHECK(t->exp.size() == 390624);
  std::vector<char> seen(390625, 0);
  for (auto c : t->exp) {
    REQUIRE(c < 390625);
    CHECK_FALSE(seen[c]);
    seen[c] = 1;
  }
  CHECK_FALSE(seen[0]);
}

TEST_CASE("quadratic character") {
  auto f5 = FieldCtx::make(5, 1);
  CHECK(f5->chi(f5->from_int(4)) == 1);
  CHECK(f5->chi(f5->from_int(2)) == -1);
  auto f3 = FieldCtx::make(3, 1);
  CHECK(f3->chi(f3->zero()) == 0);
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 25u, 27u, 49u, 81u}) {
    std::uint32_t p = 0, n = 0;
    for (std::uint32_t cand : {3u, 5u, 7u}) {
      std::uint32_t v = 1, k = 0;
      while (v < q) v *= cand, ++k;
      if (v == q) p = cand, n = k;
    }
    auto f = FieldCtx::make(p, n);
    for (std::uint64_t a = 1; a < q; ++a) {
      for (std::uint64_t b = 1; b < q; ++b) {
        FElem ea = f->from_code(a), eb = f->from_code(b);
        CHECK(f->chi(ea) * f->chi(eb) == f->chi(f->mul(ea, eb)));
      }
    }
  }
}

TEST_CASE("table and basis arithmetic agree") {
  auto check_field = [](std::uint32_t p, std::uint32_t n, std::uint64_t samples) {
    auto f = FieldCtx::make(p, n);
    REQUIRE(f->has_tables());
    std::mt19937_64 rng(7);
    std::uint64_t q = f->size();
    for (std::uint64_t i = 0; i < samples; ++i) {
      FElem a = f->from_code(samples >= q * q ? i / q : rng() % q);
      FElem b = f->from_code(samples >= q * q ? i % q : rng() % q);
      CHECK(f->mul(a, b) == f->mul_basis(a, b));
      CHECK(f->chi(a) == f->chi_basis(a));
      if (!f->is_zero(a)) CHECK(f->inv(a) == f->inv_basis(a));
    }
  };
  check_field(3, 3, 27 * 27);
  check_field(5, 4, 5000);
}

TEST_CASE("square roots") {
  auto f5 = FieldCtx::make(5, 1);
  CHECK(f5->sqrt(f5->from_int(4)) == f5->from_int(2));
  CHECK_FALSE(f5->sqrt(f5->from_int(2)).has_value());
  auto f9 = FieldCtx::make(3, 2);
  for (std::uint64_t c = 0; c < 9; ++c) {
    FElem s = f9->from_code(c);
    auto r = f9->sqrt(s);
    CHECK(r.has_value() == (f9->chi(s) >= 0));
    if (r) {
      CHECK(f9->mul(*r, *r) == s);
      CHECK_FALSE(f9->less(f9->neg(*r), *r));
    }
  }
  // Table-free field exercises Tonelli-Shanks.
  auto big = FieldCtx::make(3, 2, FieldOptions{390625, 0, false});
  for (std::uint64_t c = 0; c < 9; ++c) {
    FElem s = big->from_code(c);
    auto r = big->sqrt(s);
    if (r) CHECK(big->mul(*r, *r) == s);
  }
}

TEST_CASE("embeddings are ring homomorphisms") {
  auto f3 = FieldCtx::make(3, 1);
  auto f27 = FieldCtx::make(3, 3);
  CHECK(embed(f3, f27, f3->from_int(2)) == f27->from_int(2));
  auto f25 = FieldCtx::make(5, 2);
  auto f625 = FieldCtx::make(5, 4);
  Embedding e(f25, f625);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    FElem a = f25->from_code(rng() % 25), b = f25->from_code(rng() % 25);
    CHECK(e(f25->mul(a, b)) == f625->mul(e(a), e(b)));
    CHECK(e(f25->add(a, b)) == f625->add(e(a), e(b)));
  }
  // The image of the generator is a root of the modulus.
  std::vector<long long> m(f25->modulus().begin(), f25->modulus().end());
  CHECK(f625->is_zero(UniPoly::from_ints(f625, m).eval(e.image_of_gen())));
  CHECK_THROWS_AS(Embedding(f25, FieldCtx::make(5, 3)), Error);
}

TEST_CASE("polynomial toolkit") {
  auto f7 = FieldCtx::make(7, 1);
  // (x-1)^2 (x-2)
  UniPoly f = UniPoly::from_ints(f7, {-1, 1}) * UniPoly::from_ints(f7, {-1, 1}) * UniPoly::from_ints(f7, {-2, 1});
  CHECK(gcd(f, f.derivative()) == UniPoly::from_ints(f7, {-1, 1}));
  auto sq = squarefree_decomposition(f);
  REQUIRE(sq.factors.size() == 2);
  CHECK(sq.expand(f7) == f);

  auto f5 = FieldCtx::make(5, 1);
  UniPoly g = UniPoly::from_ints(f5, {0, 2, 0, 0, 0, 3, 1});  // a^6 + 3a^5 + 2a
  auto fac = factorize(g, 0);
  CHECK(fac.expand(f5) == g);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].poly == UniPoly::x(f5));
  CHECK(fac.factors[1].poly.degree() == 5);
  CHECK(is_irreducible(fac.factors[1].poly));
  // Over F_{5^5} the sextic has six distinct roots.
  auto f3125 = FieldCtx::make(5, 5);
  Embedding up(f5, f3125);
  CHECK(roots(up(g)).size() == 6);

  auto f9 = FieldCtx::make(3, 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    std::vector<FElem> cs;
    for (int k = 0; k < 6; ++k) cs.push_back(f9->from_code(rng() % 9));
    UniPoly h(f9, cs);
    FElem c = f9->from_code(rng() % 9);
    UniPoly lin(f9, {f9->neg(c), f9->one()});
    CHECK(resultant(lin, h) == h.eval(c));
  }
}

TEST_CASE("factorization is deterministic and complete") {
  auto f3 = FieldCtx::make(3, 1);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    std::vector<long long> cs;
    int deg = 1 + static_cast<int>(rng() % 14);
    for (int k = 0; k < deg; ++k) cs.push_back(static_cast<long long>(rng() % 3));
    cs.push_back(1 + static_cast<long long>(rng() % 2));
    UniPoly h = UniPoly::from_ints(f3, cs);
    auto a = factorize(h, 5);
    auto b = factorize(h, 5);
    CHECK(a.expand(f3) == h);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
      CHECK(a.factors[k].poly == b.factors[k].poly);
      CHECK(is_irreducible(a.factors[k].poly));
    }
  }
  CHECK_THROWS_AS(factorize(UniPoly(f3), 0), Error);
}
