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

#include "test_support.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "k3rank/error.hpp"

namespace k3rank::testing {

std::string fixture(const std::string& rel) { return std::string(K3RANK_SOURCE_DIR) + "/fixtures/" + rel; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SexticForm random_sextic(std::mt19937_64& rng, std::uint32_t p) {
  SexticForm f;
  for (int i = 0; i < SexticForm::kTerms; ++i) {
    auto e = TernaryForm::exponents_of(6, i);
    f.set(e[0], e[1], mpz_class(static_cast<long>(rng() % p)));
  }
  return f;
}

SexticForm random_smooth_sextic(std::mt19937_64& rng, std::uint32_t p) {
  for (;;) {
    SexticForm f = random_sextic(rng, p);
    if (f.is_zero()) continue;
    SurfaceModel m(f, p);
    bool degenerate = true;
    for (int v = 0; v < 3; ++v) degenerate = degenerate && m.reduced().partial(v).is_zero();
    if (degenerate) continue;
    if (good_reduction(m).good) return f;
  }
}

SexticForm from_reduced(const TernaryForm& F) {
  SexticForm f;
  for (int i = 0; i < SexticForm::kTerms; ++i) {
    auto e = TernaryForm::exponents_of(6, i);
    f.set(e[0], e[1], mpz_class(static_cast<unsigned long>(F.coeffs()[i].c[0])));
  }
  return f;
}

TernaryForm substitute_linear(const TernaryForm& F, const std::array<std::array<long, 3>, 3>& m) {
  const FieldPtr& field = F.field();
  std::array<TernaryForm, 3> lin;
  for (int v = 0; v < 3; ++v) {
    lin[v] = TernaryForm(field, 1);
    lin[v].set(1, 0, field->from_int(m[v][0]));
    lin[v].set(0, 1, field->from_int(m[v][1]));
    lin[v].set(0, 0, field->from_int(m[v][2]));
  }
  TernaryForm out(field, F.degree());
  for (int i = 0; i < TernaryForm::monomial_count(F.degree()); ++i) {
    if (field->is_zero(F.coeffs()[i])) continue;
    auto e = TernaryForm::exponents_of(F.degree(), i);
    TernaryForm term(field, 0);
    term.set(0, 0, F.coeffs()[i]);
    for (int v = 0; v < 3; ++v) {
      for (int k = 0; k < e[v]; ++k) term = term * lin[v];
    }
    out = out + term;
  }
  return out;
}

WeilPolynomial synthetic_weil(std::mt19937_64& rng, long q) {
  ZPoly phi = ZPoly::linear(q) * ZPoly::linear(q);
  for (int i = 0; i < 10; ++i) {
    long u = static_cast<long>(rng() % (4 * q + 1)) - 2 * q;
    phi = phi * ZPoly::from_ints({q * q, -u, 1});
  }
  std::vector<mpz_class> a;
  for (int i = phi.degree(); i >= 0; --i) a.push_back(phi.coeff(i));
  return WeilPolynomial::make(q, a, 1);
}

}  // namespace k3rank::testing
