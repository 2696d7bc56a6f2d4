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

#include "k3rank/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "k3rank/error.hpp"
#include "k3rank/weil.hpp"

namespace k3rank {

ZMatrix to_zmatrix(const std::vector<std::vector<long long>>& g) {
  ZMatrix m(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (long long v : g[i]) m[i].emplace_back(static_cast<long>(v));
  }
  return m;
}

ZMatrix submatrix(const ZMatrix& gram, const std::vector<int>& idx) {
  ZMatrix m(idx.size(), std::vector<mpz_class>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = gram.at(idx[i]).at(idx[j]);
  }
  return m;
}

namespace {

std::vector<int> greedy_basis(const ZMatrix& gram) {
  std::vector<int> basis;
  int rank = 0;
  for (int i = 0; i < static_cast<int>(gram.size()); ++i) {
    auto trial = basis;
    trial.push_back(i);
    // Rank of the rows of the trial generators against all generators.
    ZMatrix rows;
    for (int t : trial) rows.push_back(gram[t]);
    int r = rank_of(rows);
    if (r > rank) {
      basis = trial;
      rank = r;
    }
  }
  return basis;
}

// Coordinates of every generator in the basis, solving G_B x = (B . g_i).
std::vector<std::vector<mpq_class>> coordinates(const ZMatrix& gram, const std::vector<int>& basis) {
  const std::size_t r = basis.size();
  QMatrix gb(r, std::vector<mpq_class>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) gb[i][j] = gram[basis[i]][basis[j]];
  }
  std::vector<std::vector<mpq_class>> out;
  for (std::size_t g = 0; g < gram.size(); ++g) {
    std::vector<mpq_class> rhs(r);
    for (std::size_t i = 0; i < r; ++i) rhs[i] = gram[basis[i]][g];
    auto sol = solve_rational(gb, rhs);
    if (!sol.unique) fail(ErrorCode::kDegenerate, "generator is not determined by the basis");
    out.push_back(*sol.unique);
  }
  return out;
}

// |det| of the Z-span of integer row vectors of full column rank.
mpz_class span_index(ZMatrix rows, std::size_t cols) {
  std::size_t pivot = 0;
  mpz_class det = 1;
  for (std::size_t c = 0; c < cols; ++c) {
    for (;;) {
      // Smallest nonzero entry in column c at or below the pivot row.
      std::size_t best = rows.size();
      for (std::size_t i = pivot; i < rows.size(); ++i) {
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      }
      if (best == rows.size()) fail(ErrorCode::kInternal, "coordinate matrix is not of full rank");
      std::swap(rows[pivot], rows[best]);
      bool done = true;
      for (std::size_t i = pivot + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), rows[i][c].get_mpz_t(), rows[pivot][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= k * rows[pivot][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    det *= abs(rows[pivot][c]);
    ++pivot;
  }
  return det;
}

}  // namespace

std::array<int, 3> inertia(const QMatrix& m0) {
  QMatrix a = m0;
  const std::size_t n = a.size();
  std::array<int, 3> out{0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][i] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      // All remaining diagonal entries vanish: e_i <- e_i + e_j makes one
      // nonzero if some off-diagonal entry is.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) {
        out[2] += static_cast<int>(n - k);
        break;
      }
      for (std::size_t j = 0; j < n; ++j) a[pi][j] += a[pj][j];
      for (std::size_t j = 0; j < n; ++j) a[j][pi] += a[j][pj];
      piv = pi;
    }
    std::swap(a[k], a[piv]);
    for (auto& row : a) std::swap(row[k], row[piv]);
    const mpq_class d = a[k][k];
    out[d > 0 ? 0 : 1]++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / d;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
    }
  }
  return out;
}

LatticeInfo analyze_gram(const ZMatrix& gram) {
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != gram.size()) fail(ErrorCode::kInvalidArgument, "Gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram[i][j] != gram[j][i]) fail(ErrorCode::kInvalidArgument, "Gram matrix is not symmetric");
    }
  }
  LatticeInfo info;
  info.basis = greedy_basis(gram);
  info.rank = static_cast<int>(info.basis.size());
  if (info.rank == 0) fail(ErrorCode::kDegenerate, "Gram matrix is zero");
  info.basis_gram = submatrix(gram, info.basis);
  info.basis_det = bareiss_det(info.basis_gram);
  if (info.basis_det == 0) fail(ErrorCode::kDegenerate, "intersection form is degenerate on the span");
  QMatrix q(info.rank, std::vector<mpq_class>(info.rank));
  for (int i = 0; i < info.rank; ++i) {
    for (int j = 0; j < info.rank; ++j) q[i][j] = info.basis_gram[i][j];
  }
  auto in = inertia(q);
  info.positive = in[0];
  info.negative = in[1];
  if (info.positive > 1) {
    fail(ErrorCode::kGeometry, "intersection form has " + std::to_string(info.positive) +
                                   " positive eigenvalues; a Neron-Severi lattice has one");
  }

  auto coords = coordinates(gram, info.basis);
  mpz_class den = 1;
  for (const auto& v : coords) {
    for (const auto& x : v) den = lcm(den, mpz_class(x.get_den()));
  }
  ZMatrix rows;
  for (const auto& v : coords) {
    std::vector<mpz_class> row;
    for (const auto& x : v) row.push_back(mpz_class(x * den));
    rows.push_back(row);
  }
  mpz_class h = span_index(rows, info.rank);
  mpz_class denr;
  mpz_pow_ui(denr.get_mpz_t(), den.get_mpz_t(), info.rank);
  mpq_class ratio(h, denr);
  ratio.canonicalize();
  mpq_class det = mpq_class(info.basis_det) * ratio * ratio;
  if (det.get_den() != 1) fail(ErrorCode::kInternal, "generated lattice has a fractional determinant");
  info.det = det.get_num();
  return info;
}

mpz_class square_class(const mpz_class& n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "square class of zero");
  mpz_class m = abs(n);
  mpz_class out = n < 0 ? -1 : 1;
  auto strip = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e % 2) out *= p;
  };
  strip(2);
  for (unsigned long p = 3; p <= 1000000 && mpz_class(p) * p <= m; p += 2) strip(p);
  if (m > 1 && m <= mpz_class(1000000)) {
    // What is left is a single prime below the bound.
    out *= m;
    return out;
  }
  if (m > 1 && mpz_perfect_square_p(m.get_mpz_t()) == 0) {
    if (m >= mpz_class("1000000000000000000")) {
      fail(ErrorCode::kLimit, "cannot certify the squarefree part of " + n.get_str());
    }
    out *= m;
  }
  return out;
}

bool classes_equal(const mpz_class& a, const mpz_class& b) {
  if (a == 0 || b == 0) fail(ErrorCode::kInvalidArgument, "square class of zero");
  mpz_class prod = a * b;
  return prod > 0 && mpz_perfect_square_p(prod.get_mpz_t()) != 0;
}

bool validate_witness(const mpz_class& a, const mpz_class& b, std::uint64_t l) {
  mpz_class L(static_cast<unsigned long>(l));
  if (l < 3 || mpz_probab_prime_p(L.get_mpz_t(), 30) == 0) return false;
  if (mpz_divisible_p(a.get_mpz_t(), L.get_mpz_t()) || mpz_divisible_p(b.get_mpz_t(), L.get_mpz_t())) return false;
  return mpz_legendre(a.get_mpz_t(), L.get_mpz_t()) != mpz_legendre(b.get_mpz_t(), L.get_mpz_t());
}

std::uint64_t witness_prime(const mpz_class& a, const mpz_class& b, std::uint64_t bound) {
  for (std::uint64_t l = 3; l <= bound; l += 2) {
    if (validate_witness(a, b, l)) return l;
  }
  return 0;
}

ZPoly frobenius_charpoly(const ZMatrix& gram, const std::vector<int>& perm, const mpz_class& q) {
  if (perm.size() != gram.size()) fail(ErrorCode::kInvalidArgument, "permutation size mismatch");
  auto basis = greedy_basis(gram);
  const std::size_t r = basis.size();
  auto coords = coordinates(gram, basis);
  // Column j of F: coordinates of Frob(b_j).
  QMatrix F(r, std::vector<mpq_class>(r));
  for (std::size_t j = 0; j < r; ++j) {
    const auto& c = coords.at(perm.at(basis[j]));
    for (std::size_t i = 0; i < r; ++i) F[i][j] = c[i];
  }
  // Frobenius must preserve the form.
  for (std::size_t i = 0; i < gram.size(); ++i) {
    for (std::size_t j = 0; j < gram.size(); ++j) {
      if (gram[perm[i]][perm[j]] != gram[i][j]) {
        fail(ErrorCode::kGeometry, "Frobenius does not preserve intersection numbers");
      }
    }
  }
  std::vector<mpz_class> traces;
  QMatrix P = F;
  mpz_class qk = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    qk *= q;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < r; ++i) tr += P[i][i];
    if (tr.get_den() != 1) fail(ErrorCode::kInternal, "fractional Frobenius trace");
    traces.push_back(tr.get_num() * qk);
    QMatrix next(r, std::vector<mpq_class>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t l = 0; l < r; ++l) {
        if (P[i][l] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) next[i][j] += P[i][l] * F[l][j];
      }
    }
    P = std::move(next);
  }
  auto tail = newton_prefix(traces, static_cast<int>(r));
  std::vector<mpz_class> high{1};
  high.insert(high.end(), tail.begin(), tail.end());
  return ZPoly::from_high(high);
}

}  // namespace k3rank
