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

// Arithmetic in finite fields F_{p^n}, odd p.
//
// Elements are stored as coefficient vectors in the polynomial basis
// 1, x, ..., x^{n-1} modulo a monic irreducible polynomial. The canonical
// element order reads the coefficient vector as a little-endian base-p
// integer (the element "code"); it drives every deterministic tie-break in
// the library.
//
// Small fields (q <= table_threshold) additionally carry discrete log,
// antilog and Zech tables. The hot counting loops work directly in the log
// domain through LogTables; everything else goes through FieldCtx.

#ifndef K3RANK_FFIELD_HPP_
#define K3RANK_FFIELD_HPP_

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace k3rank {

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

struct FieldOptions {
  // Largest p^n accepted by FieldCtx::make.
  std::uint64_t cardinality_limit = 390625;  // 5^8
  // Fields up to this size get log/antilog/Zech tables.
  std::uint64_t table_threshold = std::uint64_t{1} << 21;
  bool use_tables = true;
};

struct FElem {
  boost::container::small_vector<std::uint32_t, 12> c;

  friend bool operator==(const FElem&, const FElem&) = default;
};

// Discrete-log representation of F_q. Logs live in [0, q-1); kZero marks the
// zero element.
struct LogTables {
  static constexpr std::uint32_t kZero = 0xffffffffu;

  std::uint32_t order = 0;           // q - 1
  std::vector<std::uint32_t> log;    // indexed by element code
  std::vector<std::uint32_t> exp;    // exp[k] = code of g^k
  std::vector<std::uint32_t> zech;   // zech[d] = log(1 + g^d)

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == kZero || b == kZero) return kZero;
    std::uint32_t s = a + b;
    return s >= order ? s - order : s;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == kZero) return b;
    if (b == kZero) return a;
    std::uint32_t d = b >= a ? b - a : b + order - a;
    std::uint32_t z = zech[d];
    if (z == kZero) return kZero;
    std::uint32_t s = a + z;
    return s >= order ? s - order : s;
  }
  // Quadratic character: g is a generator, so g^k is a square iff k is even.
  static int chi(std::uint32_t a) {
    if (a == kZero) return 0;
    return (a & 1u) ? -1 : 1;
  }
};

class FieldCtx {
 public:
  // Canonical field of order p^n: the modulus is the lexicographically
  // smallest monic irreducible of degree n (coefficient tuple compared from
  // x^{n-1} down to the constant term). For n = 1 the modulus is x.
  static FieldPtr make(std::uint32_t p, std::uint32_t n,
                       const FieldOptions& options = {});

  // Residue field F_p[t]/(modulus) for an arbitrary monic irreducible
  // modulus, no cardinality limit and no tables.
  static FieldPtr with_modulus(std::uint32_t p,
                               std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  // Monic, low-to-high, size degree() + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const mpz_class& cardinality() const { return q_; }
  // Cardinality as a machine integer; throws kLimit if it does not fit.
  std::uint64_t size() const;
  bool fits_u64() const { return q_fits_; }
  bool has_tables() const { return tables_ != nullptr; }
  const LogTables* tables() const { return tables_.get(); }
  // Code of the table generator (table mode only).
  std::uint64_t generator_code() const { return generator_code_; }
  std::string describe() const;

  FElem zero() const;
  FElem one() const;
  FElem from_int(long long v) const;
  FElem from_digits(const std::vector<std::uint32_t>& digits) const;
  // The class of x in F_p[x]/(modulus).
  FElem gen() const;

  bool is_zero(const FElem& a) const;
  bool is_one(const FElem& a) const;
  // True iff a lies in the prime field F_p.
  bool in_prime_field(const FElem& a) const;

  FElem add(const FElem& a, const FElem& b) const;
  FElem sub(const FElem& a, const FElem& b) const;
  FElem neg(const FElem& a) const;
  FElem mul(const FElem& a, const FElem& b) const;
  FElem inv(const FElem& a) const;
  FElem div(const FElem& a, const FElem& b) const;
  FElem pow(const FElem& a, const mpz_class& e) const;
  FElem pow(const FElem& a, std::uint64_t e) const;
  FElem scale(const FElem& a, std::uint32_t k) const;  // a * (k mod p)
  // a^(p^times).
  FElem frobenius(const FElem& a, std::uint32_t times = 1) const;

  // Quadratic character in {-1, 0, 1}.
  int chi(const FElem& a) const;
  // Square root with the smaller of {r, -r} in canonical order, or none.
  std::optional<FElem> sqrt(const FElem& a) const;

  std::uint64_t code(const FElem& a) const;
  FElem from_code(std::uint64_t code) const;
  std::strong_ordering compare(const FElem& a, const FElem& b) const;
  bool less(const FElem& a, const FElem& b) const {
    return compare(a, b) == std::strong_ordering::less;
  }
  std::string to_string(const FElem& a) const;

  // Log-domain conversions (table mode).
  std::uint32_t to_log(const FElem& a) const;
  FElem from_log(std::uint32_t l) const;

  // Arithmetic forced through the polynomial basis, regardless of tables.
  FElem mul_basis(const FElem& a, const FElem& b) const;
  FElem inv_basis(const FElem& a) const;
  int chi_basis(const FElem& a) const;

 private:
  FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus);
  void build_tables();
  const FElem& non_residue() const;

  std::uint32_t p_;
  std::uint32_t n_;
  std::vector<std::uint32_t> modulus_;
  mpz_class q_;
  bool q_fits_ = false;
  std::uint64_t q64_ = 0;
  std::unique_ptr<LogTables> tables_;
  std::uint64_t generator_code_ = 0;
  FElem non_residue_;
};

// True iff the monic polynomial over F_p (low-to-high digits) is irreducible.
bool is_irreducible_mod_p(std::uint32_t p,
                          const std::vector<std::uint32_t>& poly);

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp);
bool is_prime_u64(std::uint64_t n);
// Distinct prime factors by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace k3rank

#endif  // K3RANK_FFIELD_HPP_
