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

// Reference values for the example surface used across the test suites.

#ifndef K3RANK_TESTS_REFERENCE_DATA_HPP_
#define K3RANK_TESTS_REFERENCE_DATA_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "k3rank/zpoly.hpp"

namespace k3rank::reference {

inline std::vector<mpz_class> mpz_list(const std::vector<const char*>& v) {
  std::vector<mpz_class> r;
  for (const char* s : v) r.emplace_back(s);
  return r;
}

inline std::vector<mpz_class> traces_p3() {
  return mpz_list({"-2", "-8", "28", "100", "388", "2458", "964", "-692", "26650", "-20528", "-464444"});
}

inline std::vector<mpz_class> traces_p5() {
  return mpz_list({"15", "95", "-75", "2075", "-1250", "-14875", "523125", "741875", "853125", "11293750"});
}

// Leading coefficient first.
inline std::vector<mpz_class> phi_p3() {
  return mpz_list({"1", "2", "6", "0", "-27", "-162", "-729", "-1458", "-2187", "0", "19683", "118098", "177147", "0",
                   "-1594323", "-9565938", "-43046721", "-86093442", "-129140163", "0", "2324522934", "6973568802",
                   "31381059609"});
}

// Expansion of (t-5)^2 (t^4+5t^3+25t^2+125t+625) (5^8 Phi_15(t/5)) (octic);
// its power sums are the traces above.
inline std::vector<mpz_class> phi_p5() {
  return mpz_list({"1", "-15", "65", "175", "-3000", "13125", "-6250", "-343750", "2656250", "-6640625", "-33203125",
                   "332031250", "-830078125", "-4150390625", "41503906250", "-134277343750", "-61035156250",
                   "3204345703125", "-18310546875000", "26702880859375", "247955322265625", "-1430511474609375",
                   "2384185791015625"});
}

inline ZPoly phi_p3_remainder() {
  return ZPoly::from_high(mpz_list({"1", "5", "21", "90", "297", "891", "2673", "7290", "19683", "59049", "177147",
                                    "590490", "1948617", "5845851", "17537553", "47829690", "100442349", "215233605",
                                    "387420489"}));
}

inline ZPoly quartic_p5() { return ZPoly::from_high(mpz_list({"1", "5", "25", "125", "625"})); }
inline ZPoly octic_tate_p5() {
  return ZPoly::from_high(mpz_list({"1", "-5", "0", "125", "-625", "3125", "0", "-78125", "390625"}));
}
inline ZPoly octic_rest_p5() {
  return ZPoly::from_high(mpz_list({"1", "-5", "-10", "75", "-125", "1875", "-6250", "-78125", "390625"}));
}

}  // namespace k3rank::reference

#endif  // K3RANK_TESTS_REFERENCE_DATA_HPP_
