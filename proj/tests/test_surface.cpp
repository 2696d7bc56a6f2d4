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
#include "k3rank/surface.hpp"
#include "test_support.hpp"

using namespace k3rank;
using k3rank::testing::fixture;

TEST_CASE("sextic parsing") {
  auto f = SexticForm::load(fixture("mod5.txt"));
  CHECK(f.coeff(0, 6) == 1);
  CHECK(f.coeff(2, 4) == -2);
  CHECK(f.coeff(6, 0) == 0);
  CHECK(SexticForm::parse(f.to_text()) == f);

  auto x6 = SexticForm::parse("1 6 0 0");
  CHECK(x6.coeff(6, 0) == 1);
  CHECK_THROWS_AS(SexticForm::parse(""), Error);
  CHECK_THROWS_AS(SexticForm::parse("# only a comment\n"), Error);
  CHECK_THROWS_AS(SexticForm::parse("1 5 0 0"), Error);
  CHECK_THROWS_AS(SexticForm::parse("1 6 0"), Error);
  CHECK_THROWS_AS(SexticForm::parse("1 6 0 0\n2 6 0 0"), Error);
  CHECK_THROWS_AS(SexticForm::parse("x 6 0 0"), Error);
  CHECK_THROWS_AS(SexticForm::parse("1 7 -1 0"), Error);
  auto big = SexticForm::parse("123456789012345678901234567890 0 0 6  # big\n");
  CHECK(big.coeff(0, 0) == mpz_class("123456789012345678901234567890"));
}

TEST_CASE("evaluation and scaling") {
  SurfaceModel m(SexticForm::load(fixture("mod5.txt")), 5);
  auto f5 = m.prime_field();
  CHECK(m.evaluate(f5, {f5->zero(), f5->zero(), f5->one()}) == f5->one());
  CHECK(f5->is_zero(m.evaluate(f5, {f5->one(), f5->zero(), f5->zero()})));
  CHECK_THROWS_AS(m.evaluate(f5, {f5->zero(), f5->zero(), f5->zero()}), Error);

  auto f25 = FieldCtx::make(5, 2);
  TernaryForm F = m.over(f25);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Point3 p{f25->from_code(rng() % 25), f25->from_code(rng() % 25), f25->from_code(1 + rng() % 24)};
    FElem lambda = f25->from_code(1 + rng() % 24);
    Point3 lp{f25->mul(lambda, p[0]), f25->mul(lambda, p[1]), f25->mul(lambda, p[2])};
    CHECK(F.eval(lp) == f25->mul(f25->pow(lambda, std::uint64_t{6}), F.eval(p)));
    CHECK(f25->chi(m.evaluate(f25, lp)) == f25->chi(m.evaluate(f25, p)));
  }
}

TEST_CASE("good reduction of the fixtures") {
  auto form = SexticForm::load(fixture("example31/surface.txt"));
  CHECK(good_reduction(SurfaceModel(form, 3)).good);
  CHECK(good_reduction(SurfaceModel(form, 5)).good);
  CHECK(good_reduction(SurfaceModel(SexticForm::load(fixture("mod3.txt")), 3)).good);
  // Even characteristic is rejected outright.
  CHECK_THROWS_AS(SurfaceModel(form, 2), Error);
}

TEST_CASE("fermat and non-reduced sextics") {
  auto fermat = SexticForm::parse("1 6 0 0\n1 0 6 0\n1 0 0 6");
  CHECK(good_reduction(SurfaceModel(fermat, 5)).good);
  CHECK(good_reduction(SurfaceModel(fermat, 7)).good);
  // 6 = 0 mod 3: every partial vanishes.
  CHECK_THROWS_AS(good_reduction(SurfaceModel(fermat, 3)), Error);

  SurfaceModel x6(SexticForm::parse("1 6 0 0"), 5);
  auto rep = good_reduction(x6);
  CHECK_FALSE(rep.good);
  REQUIRE(rep.witness);
  REQUIRE(rep.witness->point);
  const auto& f = *rep.witness->field;
  CHECK(f.is_zero((*rep.witness->point)[0]));
}

TEST_CASE("elimination finds every brute-force singular point") {
  std::mt19937_64 rng(2026);
  int singular_cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t p = std::array<std::uint32_t, 3>{3, 5, 7}[trial % 3];
    auto fp = FieldCtx::make(p, 1);
    SexticForm form;
    if (trial % 2 == 0) {
      form = k3rank::testing::random_sextic(rng, p);
    } else {
      // Drop z^6, x z^5, y z^5 so that [0:0:1] is singular, then move the
      // point by a random invertible substitution.
      TernaryForm F = SurfaceModel(k3rank::testing::random_smooth_sextic(rng, p), p).reduced();
      F.set(0, 0, fp->zero());
      F.set(1, 0, fp->zero());
      F.set(0, 1, fp->zero());
      std::array<std::array<long, 3>, 3> m{};
      for (;;) {
        for (auto& row : m) {
          for (auto& v : row) v = static_cast<long>(rng() % p);
        }
        long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det % static_cast<long>(p) != 0) break;
      }
      form = k3rank::testing::from_reduced(k3rank::testing::substitute_linear(F, m));
    }
    if (form.is_zero()) continue;
    SurfaceModel model(form, p);
    ReductionReport rep;
    try {
      rep = good_reduction(model);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDegenerate);
      continue;
    }
    bool brute_found = false;
    for (std::uint32_t k = 1; k <= (p == 7 ? 2u : 3u); ++k) {
      if (!brute_force_singular_points(model, FieldCtx::make(p, k)).empty()) brute_found = true;
    }
    if (brute_found) {
      ++singular_cases;
      CHECK_FALSE(rep.good);
    }
    if (!rep.good && rep.witness->point) {
      const FieldPtr& E = rep.witness->field;
      TernaryForm F = model.over(E);
      const Point3& pt = *rep.witness->point;
      CHECK(E->is_zero(F.eval(pt)));
      for (int v = 0; v < 3; ++v) CHECK(E->is_zero(F.partial(v).eval(pt)));
    }
  }
  CHECK(singular_cases >= 10);
}
