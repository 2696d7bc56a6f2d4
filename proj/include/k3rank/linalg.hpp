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

// Exact linear algebra over Z and Q.

#ifndef K3RANK_LINALG_HPP_
#define K3RANK_LINALG_HPP_

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace k3rank {

using ZMatrix = std::vector<std::vector<mpz_class>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

// Fraction-free (Bareiss) determinant of a square integer matrix.
mpz_class bareiss_det(ZMatrix m);
int rank_of(const ZMatrix& m);

struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  // Set when consistent and the solution is unique.
  std::optional<std::vector<mpq_class>> unique;
};

// Solves A x = b by Gauss-Jordan elimination over Q.
LinearSolution solve_rational(QMatrix a, std::vector<mpq_class> b);

}  // namespace k3rank

#endif  // K3RANK_LINALG_HPP_
