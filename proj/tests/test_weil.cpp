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
#include "k3rank/weil.hpp"
#include "reference_data.hpp"
#include "test_support.hpp"

using namespace k3rank;
namespace ref = k3rank::reference;

namespace {

std::vector<mpz_class> first(const std::vector<mpz_class>& v, std::size_t n) {
  return std::vector<mpz_class>(v.begin(), v.begin() + n);
}

}  // namespace

TEST_CASE("newton prefix") {
  CHECK(newton_prefix(std::vector<mpz_class>(5, 0)) == std::vector<mpz_class>(5, 0));
  auto a = newton_prefix(ref::traces_p3());
  CHECK(a[0] == 2);
  CHECK(a[1] == 6);
  CHECK(a[2] == 0);
  CHECK_THROWS_AS(newton_prefix({mpz_class(1), mpz_class(0)}), Error);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<mpz_class> tail;
    for (int i = 0; i < 22; ++i) tail.push_back(static_cast<long>(rng() % 2001) - 1000);
    CHECK(newton_prefix(power_sums(tail, 22)) == tail);
  }
}

TEST_CASE("power sums of the reference polynomials") {
  auto w3 = WeilPolynomial::make(3, ref::phi_p3(), 1);
  CHECK(power_sums(w3, 11) == ref::traces_p3());
  auto w5 = WeilPolynomial::make(5, ref::phi_p5(), 1);
  CHECK(power_sums(w5, 10) == ref::traces_p5());
  std::vector<mpz_class> t22(23, 0);
  t22[0] = 1;
  CHECK_THROWS_AS(WeilPolynomial::make(3, t22, 1), Error);
}

TEST_CASE("reconstruction from traces") {
  ReconstructReport rep;
  auto w3 = reconstruct(ref::traces_p3(), 3, {}, &rep);
  CHECK(w3.a == ref::phi_p3());
  CHECK(w3.epsilon == 1);
  CHECK(rep.notes.size() == 2);

  auto w5 = reconstruct(ref::traces_p5(), 5);
  CHECK(w5.a == ref::phi_p5());
  CHECK(w5.epsilon == 1);

  auto w5k = reconstruct(first(ref::traces_p5(), 8), 5, {ZPoly::linear(5) * ZPoly::linear(5), ref::quartic_p5()});
  CHECK(w5k.a == ref::phi_p5());

  CHECK_THROWS_AS(reconstruct(first(ref::traces_p5(), 8), 5), Error);
  try {
    reconstruct(first(ref::traces_p3(), 6), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientData);
  }
  auto bad = ref::traces_p3();
  bad[10] += 3;
  CHECK_THROWS_AS(reconstruct(bad, 3), Error);
}

TEST_CASE("synthetic round trips") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    long q = std::array<long, 3>{3, 5, 7}[trial % 3];
    WeilPolynomial w = k3rank::testing::synthetic_weil(rng, q);
    CHECK(newton_prefix(power_sums(w, 22)) == std::vector<mpz_class>(w.a.begin() + 1, w.a.end()));
    try {
      CHECK(reconstruct(power_sums(w, 11), q) == w);
    } catch (const Error& e) {
      // Both signs can survive when a_11 happens to vanish; that must be reported.
      CHECK(e.code() == ErrorCode::kAmbiguous);
      CHECK(w.a[11] == 0);
    }
    CHECK(roots_on_weil_circle(w.poly(), q, 1));
  }
}

TEST_CASE("base change") {
  auto w3 = WeilPolynomial::make(3, ref::phi_p3(), 1);
  CHECK(base_change(w3, 1) == w3);
  auto w27 = base_change(w3, 3);
  CHECK(w27.q == 27);
  CHECK(root_multiplicity(w27.poly(), 27) == 4);
  CHECK(base_change(base_change(w3, 1), 3) == w27);
  CHECK(base_change(base_change(w3, 3), 1) == w27);
  CHECK(base_change(w3, 6) == base_change(w27, 2));

  auto w5 = WeilPolynomial::make(5, ref::phi_p5(), 1);
  CHECK(root_multiplicity(base_change(w5, 5).poly(), 3125) >= 6);

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    WeilPolynomial w = k3rank::testing::synthetic_weil(rng, 3);
    CHECK(base_change(base_change(w, 2), 3) == base_change(w, 6));
  }
}
