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

#include <string>

#include "doctest.h"
#include "k3rank/certify.hpp"
#include "k3rank/error.hpp"
#include "k3rank/reports.hpp"
#include "test_support.hpp"

using namespace k3rank;
namespace kt = k3rank::testing;

namespace {

SexticForm example() { return SexticForm::load(kt::fixture("example31/surface.txt")); }

PrimeAnalysis analyze(std::uint32_t p, std::uint32_t n_max, bool with_divisors = true) {
  auto cfg = parse_divisor_config(kt::read_text(kt::fixture("example31/divisors.conf")), kt::fixture("example31"));
  PrimeConfig pc;
  pc.p = p;
  pc.n_max = n_max;
  pc.traces = TraceSeries::load(kt::fixture("example31/traces_p" + std::to_string(p) + ".txt"), p);
  if (with_divisors) pc.divisors = cfg[p];
  AnalysisOptions opt;
  opt.workers = 2;
  return analyze_prime(SurfaceModel(example(), p), pc, opt);
}

const Certificate& example_certificate() {
  static const Certificate c = decide(example(), analyze(3, 10), analyze(5, 8));
  return c;
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

void expect_rejected(const std::string& text, const std::string& check) {
  try {
    verify_certificate(text);
    FAIL("tampered certificate accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVerification);
    CHECK_MESSAGE(std::string(e.what()).find(check) != std::string::npos, e.what());
  }
}

}  // namespace

TEST_CASE("divisor config") {
  auto cfg = parse_divisor_config("# comment\n5 lines 5\n5 lines 1  # trailing\n", "");
  REQUIRE(cfg.count(5));
  CHECK(cfg[5].line_degrees == std::vector<unsigned>{5, 1});
  CHECK(cfg[5].conics.empty());
  auto c3 = parse_divisor_config("3 conics 3 f3_p3.txt\n", kt::fixture("example31"));
  REQUIRE(c3[3].conics.size() == 1);
  CHECK(c3[3].conics[0].degree == 3);
  for (const char* bad : {"5 planes 2\n", "x lines 2\n", "5 lines\n", "2 lines 1\n", "3 conics 3\n"}) {
    try {
      parse_divisor_config(bad, "");
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
    }
  }
  CHECK_THROWS_AS(parse_divisor_config("3 conics 3 missing.txt\n", "/nonexistent"), Error);
}

TEST_CASE("per-prime classes of the example") {
  const auto& c = example_certificate();
  const auto& a3 = c.primes[0];
  const auto& a5 = c.primes[1];
  CHECK(a3.admissible.dims == std::set<int>{1, 2, 3, 4});
  CHECK(a5.admissible.dims == std::set<int>{1, 2, 5, 6, 9, 10, 13, 14});
  CHECK(a3.divisors.lattice.rank == 3);
  CHECK(a3.divisors.lattice.det == 24);
  CHECK(a5.divisors.lattice.rank == 6);
  CHECK(a5.divisors.lattice.det == -81);

  auto cls = [](const PrimeAnalysis& a, int d) { return a.usable_class(d); };
  REQUIRE(cls(a3, 2));
  CHECK(cls(a3, 2)->value == -489);
  CHECK(cls(a3, 2)->source == "artin-tate");
  CHECK(cls(a3, 4)->value == -163);
  CHECK(cls(a3, 3)->value == 6);
  CHECK(cls(a3, 3)->source == "lattice");
  REQUIRE(cls(a5, 2));
  CHECK(cls(a5, 2)->value == -5);
  CHECK(cls(a5, 2)->source == "lattice");
  CHECK(cls(a5, 6)->value == -1);
  CHECK_FALSE(cls(a5, 5));

  int conditional = 0;
  for (const auto& r : a5.classes) {
    if (r.source == "artin-tate" && r.dim == 2) {
      CHECK(r.value == -5);
      CHECK(r.conditional);
      ++conditional;
    }
    if (r.source == "artin-tate" && r.dim == 14) {
      CHECK(r.value == -1);
      CHECK_FALSE(r.conditional);
    }
  }
  CHECK(conditional == 1);
}

TEST_CASE("certificate of the example") {
  const auto& c = example_certificate();
  CHECK(c.proven);
  CHECK(c.conclusion() == "rank 1 proven");
  CHECK(c.intersection == std::set<int>{1, 2});
  REQUIRE(c.exclusions.size() == 1);
  CHECK(c.exclusions[0].dim == 2);
  CHECK(c.exclusions[0].first == -489);
  CHECK(c.exclusions[0].second == -5);
  CHECK(c.exclusions[0].witness == 17);

  const std::string text = c.to_text();
  CHECK(text.rfind("k3rank-certificate: 1\n", 0) == 0);
  CHECK(text == c.to_text());
  auto rep = verify_certificate(text);
  CHECK(rep.proven);
  CHECK(rep.checks.size() > 10);
}

TEST_CASE("tampered certificates are rejected") {
  const std::string text = example_certificate().to_text();
  expect_rejected(replace_once(text, "trace: 5 388", "trace: 5 390"), "power sum 5");
  expect_rejected(replace_once(text, "exclusion: 2 -489 -5 17", "exclusion: 2 -489 -5 3"), "witness prime 3");
  expect_rejected(replace_once(text, "divisors.det: 24", "divisors.det: 96"), "lattice rank and det");
  expect_rejected(replace_once(text, "value: -489", "value: -163"), "Artin-Tate class");
  expect_rejected(replace_once(text, "divisors.frobenius: 0 3 4 5 6 1 2", "divisors.frobenius: 0 3 4 1 2 5 6"),
                  "p=3 ");
  expect_rejected(replace_once(text, "conclusion: rank 1 proven", "conclusion: inconclusive"), "conclusion");
  try {
    verify_certificate(replace_once(text, "k3rank-certificate: 1", "k3rank-certificate: 9"));
    FAIL("future version accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
  CHECK_THROWS_AS(verify_certificate(""), Error);
}

TEST_CASE("missing classes make the decision inconclusive") {
  const auto& c = example_certificate();
  // Without the mod-5 lines only a conditional class exists in dimension 2.
  auto bare = decide(example(), c.primes[0], analyze(5, 8, false));
  CHECK_FALSE(bare.proven);
  REQUIRE(bare.gaps.size() == 1);
  CHECK(bare.gaps[0].find("dim 2") != std::string::npos);
  CHECK(bare.gaps[0].find("p=5") != std::string::npos);
  CHECK(bare.conclusion().rfind("inconclusive", 0) == 0);
  CHECK_FALSE(verify_certificate(bare.to_text()).proven);

  // Equal classes cannot exclude anything.
  auto same = decide(example(), c.primes[0], c.primes[0]);
  CHECK_FALSE(same.proven);
}

TEST_CASE("pipeline errors name the stage") {
  PrimeConfig pc;
  pc.p = 3;
  pc.n_max = 2;
  TraceSeries wrong;
  wrong.p = 3;
  wrong.entries.push_back({1, count_from_trace(3, 1, 5), 5});
  pc.traces = wrong;
  try {
    analyze_prime(SurfaceModel(example(), 3), pc, {});
    FAIL("inconsistent traces accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconsistent);
    CHECK(std::string(e.what()).rfind("p=3 counting: ", 0) == 0);
  }

  // Singular at [0:0:1].
  auto nodal = SexticForm::parse("1 6 0 0\n1 0 6 0\n1 2 0 4\n1 0 2 4\n");
  try {
    analyze_prime(SurfaceModel(nodal, 3), pc, {});
    FAIL("bad reduction accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadReduction);
    CHECK(std::string(e.what()).rfind("p=3 surface: ", 0) == 0);
  }
}

TEST_CASE("split degree bound") {
  auto b = split_degree_bound(-489);
  CHECK(b.d_min == 23);
  CHECK(b.genus_drop == 255);
  CHECK(split_degree_bound(489).d_min == 23);
  CHECK(split_degree_bound(-5).d_min == 1);
  CHECK_THROWS_AS(split_degree_bound(0), Error);
}

TEST_CASE("divisors report of the conic triple") {
  auto cfg = parse_divisor_config(kt::read_text(kt::fixture("example31/divisors.conf")), kt::fixture("example31"));
  std::vector<std::string> notes;
  auto inv = build_inventory(SurfaceModel(example(), 3), cfg[3], {}, &notes);
  auto text = divisors_report(3, inv, notes);
  CHECK(text.find("det: 24\n") != std::string::npos);
  CHECK(text.find("components.basis: Q1+ Q1- Q2+\n") != std::string::npos);
  CHECK(text.find("components.det: 96\n") != std::string::npos);
  CHECK(text.find("labeling: Q1+ Q2+ Q3+ det 216\n") != std::string::npos);
  CHECK(text.find("labeling: Q1- Q2+ Q3+ det 24\n") != std::string::npos);
}
