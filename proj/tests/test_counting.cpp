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

#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "k3rank/counting.hpp"
#include "k3rank/error.hpp"
#include "test_support.hpp"

using namespace k3rank;
using k3rank::testing::fixture;

TEST_CASE("kernel matches the naive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t p = std::array<std::uint32_t, 3>{3, 5, 7}[trial % 3];
    SurfaceModel m(k3rank::testing::random_smooth_sextic(rng, p), p);
    for (std::uint32_t n = 1; n <= 2; ++n) {
      mpz_class fast = count_points(m, n);
      CHECK(fast == count_points_naive(m, FieldCtx::make(p, n)));
      CountOptions no_orbits;
      no_orbits.frobenius_orbits = false;
      CHECK(fast == count_points(m, n, no_orbits));
    }
  }
}

TEST_CASE("fiber identity and table-free path") {
  std::mt19937_64 rng(7);
  SurfaceModel m(k3rank::testing::random_smooth_sextic(rng, 3), 3);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), 3, n);
    CHECK(count_points(m, n) - (q * q + q + 1) == character_sum(m, n));
  }
  FieldOptions no_tables;
  no_tables.use_tables = false;
  SurfaceModel plain(m.form(), 3, no_tables);
  for (std::uint32_t n = 1; n <= 3; ++n) CHECK(count_points(plain, n) == count_points(m, n));
}

TEST_CASE("worker count does not change the result") {
  SurfaceModel m(SexticForm::load(fixture("example31/surface.txt")), 5);
  for (std::uint32_t n : {2u, 3u}) {
    CountOptions one, two, eight;
    two.workers = 2;
    eight.workers = 8;
    mpz_class a = count_points(m, n, one);
    CHECK(a == count_points(m, n, two));
    CHECK(a == count_points(m, n, eight));
  }
}

TEST_CASE("trace series, Weil bound and cache") {
  auto dir = std::filesystem::temp_directory_path() / "k3rank_cache_test";
  std::filesystem::remove_all(dir);
  CountCache cache(dir.string());
  SurfaceModel m(SexticForm::load(fixture("example31/surface.txt")), 3);
  auto first = trace_series(m, 1, {}, &cache);
  CHECK(first.cache_hits == 0);
  auto second = trace_series(m, 1, {}, &cache);
  CHECK(second.cache_hits == 1);
  CHECK(second.traces() == first.traces());
  CHECK(first.traces().front() == -2);

  auto s = trace_series(m, 4, {}, &cache);
  for (const auto& e : s.entries) CHECK(within_weil_bound(3, e.n, e.trace));

  // Corrupt the cache: a malformed line and a conflicting value.
  {
    std::ofstream out(cache.path(), std::ios::app);
    out << "garbage\n" << form_hash(m) << " 3 2 12345\n";
  }
  auto again = trace_series(m, 2, {}, &cache);
  CHECK(again.traces() == std::vector<mpz_class>{-2, -8});
  CHECK(again.warnings.size() >= 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("trace fixtures") {
  auto t3 = TraceSeries::load(fixture("traces_p3.txt"));
  CHECK(t3.p == 3);
  CHECK(t3.entries.size() == 11);
  CHECK(t3.entries.back().trace == -464444);
  CHECK(TraceSeries::parse(t3.to_text()).traces() == t3.traces());
  CHECK_THROWS_AS(TraceSeries::parse("1 5\n"), Error);
  CHECK_THROWS_AS(TraceSeries::parse("p 3\n1 1000\n"), Error);
  CHECK_THROWS_AS(TraceSeries::parse("p 3\n1 2\n1 2\n"), Error);
}

TEST_CASE("counting rejects bad reduction and oversized fields") {
  SurfaceModel x6(SexticForm::parse("1 6 0 0"), 5);
  CHECK_THROWS_AS(count_points(x6, 1), Error);
  SurfaceModel m(SexticForm::load(fixture("example31/surface.txt")), 5);
  CHECK_THROWS_AS(count_points(m, 9), Error);
}
