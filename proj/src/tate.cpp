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

#include "k3rank/tate.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "k3rank/error.hpp"

namespace k3rank {

unsigned euler_phi(unsigned n) {
  unsigned result = n, m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

ZPoly cyclotomic(unsigned n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "cyclotomic index must be >= 1");
  static std::map<unsigned, ZPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  ZPoly r = ZPoly::monomial(1, n) - ZPoly::from_ints({1});
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto quo = exact_div(r, cyclotomic(d));
    if (!quo) fail(ErrorCode::kInternal, "cyclotomic division failed");
    r = *quo;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(n, r);
  return r;
}

ZPoly scaled_cyclotomic(unsigned n, const mpz_class& q) {
  ZPoly c = cyclotomic(n);
  const int deg = c.degree();
  std::vector<mpz_class> out(deg + 1);
  for (int i = 0; i <= deg; ++i) {
    mpz_class w;
    mpz_pow_ui(w.get_mpz_t(), q.get_mpz_t(), deg - i);
    out[i] = c.coeff(i) * w;
  }
  return ZPoly(out);
}

ZPoly TateDecomposition::reassemble() const {
  ZPoly r = remainder;
  for (const auto& f : factors) r = r * f.poly.pow(f.multiplicity);
  return r;
}

TateDecomposition tate_split(const WeilPolynomial& w) {
  TateDecomposition d;
  d.q = w.q;
  ZPoly rest = w.poly();
  for (unsigned n = 1; n <= 1000; ++n) {
    if (static_cast<int>(euler_phi(n)) > std::min(kWeilDegree, rest.degree())) continue;
    ZPoly f = scaled_cyclotomic(n, w.q);
    int mult = 0;
    while (rest.degree() >= f.degree()) {
      auto quo = exact_div(rest, f);
      if (!quo) break;
      rest = *quo;
      ++mult;
    }
    if (mult > 0) {
      d.factors.push_back({n, f, mult});
      d.tate_dimension += mult * f.degree();
    }
  }
  d.remainder = rest;
  return d;
}

std::vector<const AdmissibleCandidate*> AdmissibleDims::of_dimension(int dim) const {
  std::vector<const AdmissibleCandidate*> r;
  for (const auto& c : candidates) {
    if (c.dimension == dim) r.push_back(&c);
  }
  return r;
}

AdmissibleDims admissible_dimensions(const TateDecomposition& d, const std::vector<ZPoly>& pinned) {
  AdmissibleDims out;
  std::vector<int> left;
  for (const auto& f : d.factors) left.push_back(f.multiplicity);
  std::vector<int> used(d.factors.size(), 0);
  for (const auto& pin : pinned) {
    ZPoly rest = pin;
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      while (left[i] > 0 && rest.degree() >= d.factors[i].degree()) {
        auto quo = exact_div(rest, d.factors[i].poly);
        if (!quo) break;
        rest = *quo;
        --left[i];
        ++used[i];
      }
    }
    if (rest.degree() != 0 || rest.coeff(0) != 1) {
      fail(ErrorCode::kInvalidArgument, "pinned factor " + pin.to_string() + " is not part of the Tate factorization");
    }
  }
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    if (used[i] > 0) {
      out.pinned.push_back({d.factors[i].n, d.factors[i].poly, used[i]});
      out.pinned_dimension += used[i] * d.factors[i].degree();
    }
    if (left[i] > 1) {
      fail(ErrorCode::kUniqueness, "uniqueness unavailable: factor " + d.factors[i].poly.to_string() +
                                       " remains with multiplicity " + std::to_string(left[i]) + " after pinning");
    }
    if (left[i] == 1) out.free_factors.push_back({d.factors[i].n, d.factors[i].poly, 1});
  }
  const std::size_t k = out.free_factors.size();
  if (k >= 63 || (std::size_t{1} << k) > kMaxAdmissibleSubsets) {
    fail(ErrorCode::kLimit, "too many admissible subsets");
  }
  ZPoly pinned_poly = ZPoly::from_ints({1});
  std::vector<unsigned> pinned_indices;
  for (const auto& f : out.pinned) {
    pinned_poly = pinned_poly * f.poly.pow(f.multiplicity);
    for (int m = 0; m < f.multiplicity; ++m) pinned_indices.push_back(f.n);
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    AdmissibleCandidate c;
    c.dimension = out.pinned_dimension;
    c.charpoly = pinned_poly;
    c.indices = pinned_indices;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      c.subset.push_back(i);
      c.dimension += out.free_factors[i].degree();
      c.charpoly = c.charpoly * out.free_factors[i].poly;
      c.indices.push_back(out.free_factors[i].n);
    }
    out.dims.insert(c.dimension);
    out.candidates.push_back(std::move(c));
  }
  std::stable_sort(out.candidates.begin(), out.candidates.end(),
                   [](const AdmissibleCandidate& a, const AdmissibleCandidate& b) { return a.dimension < b.dimension; });
  return out;
}

}  // namespace k3rank
