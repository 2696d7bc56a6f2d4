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

// Dense integer and rational polynomials on top of GMP.

#ifndef K3RANK_ZPOLY_HPP_
#define K3RANK_ZPOLY_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3rank {

class ZPoly {
 public:
  ZPoly() = default;
  // Low-to-high coefficients.
  explicit ZPoly(std::vector<mpz_class> coeffs);
  static ZPoly from_high(const std::vector<mpz_class>& high_to_low);
  static ZPoly from_ints(const std::vector<long long>& low_to_high);
  static ZPoly monomial(const mpz_class& c, std::size_t degree);
  // (t - root)
  static ZPoly linear(const mpz_class& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const mpz_class& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly scaled(const mpz_class& k) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }

  mpz_class eval(const mpz_class& x) const;
  ZPoly derivative() const;
  ZPoly pow(unsigned e) const;
  // High-to-low human form, e.g. "t^2 + 3*t + 9".
  std::string to_string(const std::string& var = "t") const;
  // Space-separated coefficients from the leading one down.
  std::string to_coeff_list() const;

 private:
  void normalize();
  std::vector<mpz_class> c_;
};

// Exact division by a polynomial with unit or dividing leading coefficient;
// none if the remainder is nonzero or a quotient coefficient is fractional.
std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b);
// Remainder over Q of a modulo a monic b (integral since b is monic).
ZPoly rem_monic(const ZPoly& a, const ZPoly& b);
// Parses "1 2 6 0 ..." (leading first).
ZPoly parse_coeff_list(const std::string& text);

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);
  explicit QPoly(const ZPoly& z);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& lead() const { return c_.back(); }

  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly derivative() const;
  QPoly monic() const;
  mpq_class eval(const mpq_class& x) const;

 private:
  void normalize();
  std::vector<mpq_class> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic
// True iff a has no repeated root over C (gcd(a, a') constant).
bool is_squarefree(const ZPoly& a);
// Number of distinct real roots of a in the closed interval [lo, hi].
int count_real_roots(const ZPoly& a, const mpq_class& lo, const mpq_class& hi);

}  // namespace k3rank

#endif  // K3RANK_ZPOLY_HPP_
