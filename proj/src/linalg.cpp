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

#include "k3rank/linalg.hpp"

#include "k3rank/error.hpp"

namespace k3rank {

mpz_class bareiss_det(ZMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) fail(ErrorCode::kInvalidArgument, "determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

int rank_of(const ZMatrix& m) {
  QMatrix q;
  for (const auto& row : m) q.emplace_back(row.begin(), row.end());
  std::vector<mpq_class> zero(m.size(), 0);
  return solve_rational(std::move(q), std::move(zero)).rank;
}

LinearSolution solve_rational(QMatrix a, std::vector<mpq_class> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) fail(ErrorCode::kInvalidArgument, "right-hand side length mismatch");
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    mpq_class inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  LinearSolution out;
  out.rank = static_cast<int>(r);
  out.consistent = true;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) out.consistent = false;
  }
  if (out.consistent && r == cols) {
    std::vector<mpq_class> x(cols);
    for (std::size_t i = 0; i < r; ++i) x[pivot_cols[i]] = b[i];
    out.unique = std::move(x);
  }
  return out;
}

}  // namespace k3rank
