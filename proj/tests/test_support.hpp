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

// Shared helpers for the unit and acceptance suites.

#ifndef K3RANK_TESTS_TEST_SUPPORT_HPP_
#define K3RANK_TESTS_TEST_SUPPORT_HPP_

#include <array>
#include <random>
#include <string>

#include "k3rank/surface.hpp"
#include "k3rank/weil.hpp"

namespace k3rank::testing {

std::string fixture(const std::string& rel);
std::string read_text(const std::string& path);
SexticForm random_sextic(std::mt19937_64& rng, std::uint32_t p);
// Coefficients in [0, p) with smooth reduction mod p.
SexticForm random_smooth_sextic(std::mt19937_64& rng, std::uint32_t p);
SexticForm from_reduced(const TernaryForm& F);
// F(m00 x + m01 y + m02 z, m10 x + ..., ...).
TernaryForm substitute_linear(const TernaryForm& F, const std::array<std::array<long, 3>, 3>& m);
// Random Weil-symmetric polynomial with sign +1: (t - q)^2 times products of
// t^2 - u t + q^2 with |u| <= 2q, which keeps every root on |t| = q.
WeilPolynomial synthetic_weil(std::mt19937_64& rng, long q);

}  // namespace k3rank::testing

#endif  // K3RANK_TESTS_TEST_SUPPORT_HPP_
