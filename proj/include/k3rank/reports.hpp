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

// Human-readable "key: value" reports shared by the C API and the tests.

#ifndef K3RANK_REPORTS_HPP_
#define K3RANK_REPORTS_HPP_

#include <string>
#include <vector>

#include "k3rank/certify.hpp"
#include "k3rank/weil.hpp"

namespace k3rank {

std::string weil_report(const WeilPolynomial& w, const ReconstructReport& rep);
// Tate split, admissible dimensions and the candidate charpolys per dimension.
std::string tate_report(const WeilPolynomial& w);
std::string divisors_report(std::uint32_t p, const DivisorInventory& inv, const std::vector<std::string>& notes);

}  // namespace k3rank

#endif  // K3RANK_REPORTS_HPP_
