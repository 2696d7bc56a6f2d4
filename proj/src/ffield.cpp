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

#include "k3rank/ffield.hpp"

#include <algorithm>
#include <sstream>

#include "k3rank/error.hpp"

namespace k3rank {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kLimit: return "limit exceeded";
    case ErrorCode::kBadReduction: return "bad reduction";
    case ErrorCode::kDegenerate: return "degenerate input";
    case ErrorCode::kInconsistent: return "inconsistent data";
    case ErrorCode::kInsufficientData: return "insufficient data";
    case ErrorCode::kAmbiguous: return "ambiguous";
    case ErrorCode::kUniqueness: return "uniqueness unavailable";
    case ErrorCode::kGeometry: return "geometry error";
    case ErrorCode::kVerification: return "verification failed";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using Digits = std::vector<std::uint32_t>;

// Dense polynomial helpers over F_p used before a FieldCtx exists.
void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits mulmod_p(const Digits& a, const Digits& b, const Digits& m,
                std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  const std::size_t n = m.size() - 1;
  for (std::size_t k = prod.size(); k-- > n;) {
    std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) {
      std::uint64_t sub = c * m[j] % p;
      std::size_t idx = k - n + j;
      prod[idx] = (prod[idx] + p - sub) % p;
    }
  }
  Digits r(std::min(prod.size(), n));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
  trim(r);
  return r;
}

Digits powmod_p(Digits base, const mpz_class& e, const Digits& m,
                std::uint32_t p) {
  Digits r{1};
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod_p(r, r, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod_p(r, base, m, p);
  }
  return r;
}

Digits polymod_p(Digits a, const Digits& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  std::uint64_t inv_lead = 1;
  {
    // Fermat inverse of the leading coefficient.
    mpz_class base = b.back(), mod = p, r;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), p - 2, mod.get_mpz_t());
    inv_lead = r.get_ui();
  }
  while (a.size() > db) {
    std::uint64_t c = a.back() * inv_lead % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      std::uint64_t sub = c * b[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Digits polygcd_p(Digits a, Digits b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = polymod_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(std::uint32_t p, const Digits& f) {
  const std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  // Rabin: x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for r | n.
  const Digits x{0, 1};
  auto frob_power = [&](std::size_t k) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k);
    return powmod_p(x, e, f, p);
  };
  Digits full = frob_power(n);
  if (full != x) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Digits h = frob_power(n / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Digits g = polygcd_p(f, h, p);
    if (g.size() > 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), n_(static_cast<std::uint32_t>(modulus.size() - 1)),
      modulus_(std::move(modulus)) {
  mpz_ui_pow_ui(q_.get_mpz_t(), p_, n_);
  q_fits_ = mpz_sizeinbase(q_.get_mpz_t(), 2) <= 62;
  if (q_fits_) {
    q64_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) q64_ *= p_;
  }
}

FieldPtr FieldCtx::make(std::uint32_t p, std::uint32_t n,
                        const FieldOptions& options) {
  if (p == 2) fail(ErrorCode::kInvalidArgument, "even characteristic unsupported");
  if (!is_prime_u64(p)) {
    fail(ErrorCode::kInvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
  }
  if (n < 1) fail(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, n);
  if (q > mpz_class(std::to_string(options.cardinality_limit))) {
    fail(ErrorCode::kLimit, "field size " + q.get_str() + " exceeds cardinality limit " +
                                std::to_string(options.cardinality_limit));
  }

  std::vector<std::uint32_t> modulus;
  if (n == 1) {
    modulus = {0, 1};
  } else {
    // Counter digits are c_0 (fastest) .. c_{n-1}, which is exactly the
    // lexicographic order with the constant term last.
    std::vector<std::uint32_t> cand(n + 1, 0);
    cand[n] = 1;
    for (;;) {
      if (cand[0] != 0 && is_irreducible_mod_p(p, cand)) break;
      std::size_t i = 0;
      while (i < n && ++cand[i] == p) cand[i++] = 0;
      if (i == n) fail(ErrorCode::kInternal, "no irreducible polynomial found");
    }
    modulus = cand;
  }

  auto* raw = new FieldCtx(p, std::move(modulus));
  std::shared_ptr<FieldCtx> ctx(raw);
  ctx->non_residue_ = ctx->non_residue();
  if (options.use_tables && ctx->q_fits_ && ctx->q64_ <= options.table_threshold) {
    ctx->build_tables();
  }
  return ctx;
}

FieldPtr FieldCtx::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (p == 2) fail(ErrorCode::kInvalidArgument, "even characteristic unsupported");
  trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    fail(ErrorCode::kInvalidArgument, "residue field modulus must be monic of degree >= 1");
  }
  if (!is_irreducible_mod_p(p, modulus)) {
    fail(ErrorCode::kInvalidArgument, "residue field modulus is reducible");
  }
  std::shared_ptr<FieldCtx> ctx(new FieldCtx(p, std::move(modulus)));
  ctx->non_residue_ = ctx->non_residue();
  return ctx;
}

const FElem& FieldCtx::non_residue() const {
  if (!non_residue_.c.empty()) return non_residue_;
  // Smallest non-square in canonical order.
  auto* self = const_cast<FieldCtx*>(this);
  for (std::uint64_t code = 2;; ++code) {
    FElem e = zero();
    std::uint64_t v = code;
    for (std::uint32_t i = 0; i < n_ && v > 0; ++i) {
      e.c[i] = static_cast<std::uint32_t>(v % p_);
      v /= p_;
    }
    if (chi_basis(e) == -1) {
      self->non_residue_ = e;
      return non_residue_;
    }
  }
}

void FieldCtx::build_tables() {
  const std::uint64_t q = q64_;
  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  std::uint64_t gcode = 0;
  for (std::uint64_t code = 1; code < q; ++code) {
    FElem g = from_code(code);
    bool ok = true;
    for (std::uint64_t r : factors) {
      FElem t = one();
      FElem base = g;
      for (std::uint64_t e = order / r; e > 0; e >>= 1) {
        if (e & 1) t = mul_basis(t, base);
        base = mul_basis(base, base);
      }
      if (is_one(t)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gcode = code;
      break;
    }
  }
  generator_code_ = gcode;

  auto tables = std::make_unique<LogTables>();
  tables->order = static_cast<std::uint32_t>(order);
  tables->log.assign(q, LogTables::kZero);
  tables->exp.assign(order, 0);
  const FElem g = from_code(gcode);
  FElem cur = one();
  for (std::uint64_t k = 0; k < order; ++k) {
    std::uint64_t c = code(cur);
    tables->exp[k] = static_cast<std::uint32_t>(c);
    tables->log[c] = static_cast<std::uint32_t>(k);
    cur = mul_basis(cur, g);
  }
  tables->zech.assign(order, LogTables::kZero);
  for (std::uint64_t d = 0; d < order; ++d) {
    // 1 + g^d: bump the constant digit of the code.
    std::uint64_t c = tables->exp[d];
    std::uint64_t low = c % p_;
    std::uint64_t c1 = c - low + (low + 1) % p_;
    tables->zech[d] = tables->log[c1];
  }
  tables_ = std::move(tables);
}

std::uint64_t FieldCtx::size() const {
  if (!q_fits_) fail(ErrorCode::kLimit, "field size " + q_.get_str() + " exceeds 64-bit range");
  return q64_;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (n_ > 1) os << "^" << n_;
  return os.str();
}

FElem FieldCtx::zero() const {
  FElem e;
  e.c.assign(n_, 0);
  return e;
}

FElem FieldCtx::one() const {
  FElem e = zero();
  e.c[0] = 1;
  return e;
}

FElem FieldCtx::from_int(long long v) const {
  FElem e = zero();
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  e.c[0] = static_cast<std::uint32_t>(r);
  return e;
}

FElem FieldCtx::from_digits(const std::vector<std::uint32_t>& digits) const {
  if (digits.size() > n_) fail(ErrorCode::kInvalidArgument, "too many digits for field element");
  FElem e = zero();
  for (std::size_t i = 0; i < digits.size(); ++i) e.c[i] = digits[i] % p_;
  return e;
}

FElem FieldCtx::gen() const {
  if (n_ == 1) return from_int(-static_cast<long long>(modulus_[0]));
  FElem e = zero();
  e.c[1] = 1;
  return e;
}

bool FieldCtx::is_zero(const FElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](std::uint32_t d) { return d == 0; });
}

bool FieldCtx::is_one(const FElem& a) const {
  if (a.c[0] != 1) return false;
  return std::all_of(a.c.begin() + 1, a.c.end(), [](std::uint32_t d) { return d == 0; });
}

bool FieldCtx::in_prime_field(const FElem& a) const {
  return std::all_of(a.c.begin() + 1, a.c.end(), [](std::uint32_t d) { return d == 0; });
}

FElem FieldCtx::add(const FElem& a, const FElem& b) const {
  FElem r = a;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t s = r.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FElem FieldCtx::sub(const FElem& a, const FElem& b) const {
  FElem r = a;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r.c[i] = r.c[i] >= b.c[i] ? r.c[i] - b.c[i] : r.c[i] + p_ - b.c[i];
  }
  return r;
}

FElem FieldCtx::neg(const FElem& a) const {
  FElem r = a;
  for (auto& d : r.c) d = d == 0 ? 0 : p_ - d;
  return r;
}

FElem FieldCtx::scale(const FElem& a, std::uint32_t k) const {
  FElem r = a;
  k %= p_;
  for (auto& d : r.c) d = static_cast<std::uint32_t>(std::uint64_t{d} * k % p_);
  return r;
}

FElem FieldCtx::mul_basis(const FElem& a, const FElem& b) const {
  if (n_ == 1) {
    FElem r = zero();
    r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p_);
    return r;
  }
  boost::container::small_vector<std::uint64_t, 24> prod(2 * n_ - 1, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    for (std::uint32_t j = 0; j < n_; ++j) {
      prod[i + j] += std::uint64_t{a.c[i]} * b.c[j];
    }
    if (p_ > 65535) {
      for (auto& v : prod) v %= p_;
    }
  }
  for (auto& v : prod) v %= p_;
  for (std::size_t k = prod.size(); k-- > n_;) {
    std::uint64_t c = prod[k] % p_;
    if (c == 0) continue;
    for (std::uint32_t j = 0; j < n_; ++j) {
      std::size_t idx = k - n_ + j;
      prod[idx] = (prod[idx] + (p_ - c) * modulus_[j]) % p_;
    }
  }
  FElem r = zero();
  for (std::uint32_t i = 0; i < n_; ++i) r.c[i] = static_cast<std::uint32_t>(prod[i] % p_);
  return r;
}

FElem FieldCtx::mul(const FElem& a, const FElem& b) const {
  if (tables_) {
    return from_log(tables_->mul(to_log(a), to_log(b)));
  }
  return mul_basis(a, b);
}

FElem FieldCtx::inv_basis(const FElem& a) const {
  if (is_zero(a)) fail(ErrorCode::kInvalidArgument, "inverse of zero");
  mpz_class e = q_ - 2;
  FElem r = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul_basis(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_basis(r, a);
  }
  return r;
}

FElem FieldCtx::inv(const FElem& a) const {
  if (is_zero(a)) fail(ErrorCode::kInvalidArgument, "inverse of zero");
  if (tables_) {
    std::uint32_t l = to_log(a);
    return from_log(l == 0 ? 0 : tables_->order - l);
  }
  return inv_basis(a);
}

FElem FieldCtx::div(const FElem& a, const FElem& b) const { return mul(a, inv(b)); }

FElem FieldCtx::pow(const FElem& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), mpz_class(-e));
  if (e == 0) return one();
  if (is_zero(a)) return zero();
  if (tables_) {
    mpz_class r = (e * to_log(a)) % tables_->order;
    return from_log(static_cast<std::uint32_t>(r.get_ui()));
  }
  FElem r = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul_basis(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_basis(r, a);
  }
  return r;
}

FElem FieldCtx::pow(const FElem& a, std::uint64_t e) const {
  return pow(a, mpz_class(std::to_string(e)));
}

FElem FieldCtx::frobenius(const FElem& a, std::uint32_t times) const {
  times %= n_;
  if (times == 0) return a;
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p_, times);
  return pow(a, e);
}

int FieldCtx::chi_basis(const FElem& a) const {
  if (is_zero(a)) return 0;
  mpz_class e = (q_ - 1) / 2;
  FElem r = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul_basis(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul_basis(r, a);
  }
  return is_one(r) ? 1 : -1;
}

int FieldCtx::chi(const FElem& a) const {
  if (tables_) return LogTables::chi(to_log(a));
  return chi_basis(a);
}

std::optional<FElem> FieldCtx::sqrt(const FElem& a) const {
  if (is_zero(a)) return zero();
  FElem r;
  if (tables_) {
    std::uint32_t l = to_log(a);
    if (l & 1u) return std::nullopt;
    r = from_log(l / 2);
  } else {
    if (chi_basis(a) != 1) return std::nullopt;
    // Tonelli-Shanks with q - 1 = 2^s * t.
    mpz_class t = q_ - 1;
    unsigned s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
      t /= 2;
      ++s;
    }
    FElem z = pow(non_residue_, t);
    FElem x = pow(a, mpz_class((t + 1) / 2));
    FElem b = pow(a, t);
    unsigned m = s;
    while (!is_one(b)) {
      unsigned i = 0;
      FElem bb = b;
      while (!is_one(bb)) {
        bb = mul(bb, bb);
        ++i;
      }
      FElem w = z;
      for (unsigned j = 0; j + 1 < m - i; ++j) w = mul(w, w);
      x = mul(x, w);
      z = mul(w, w);
      b = mul(b, z);
      m = i;
    }
    r = x;
  }
  FElem nr = neg(r);
  return less(nr, r) ? nr : r;
}

std::uint64_t FieldCtx::code(const FElem& a) const {
  if (!q_fits_) fail(ErrorCode::kLimit, "element codes unavailable for " + describe());
  std::uint64_t v = 0;
  for (std::uint32_t i = n_; i-- > 0;) v = v * p_ + a.c[i];
  return v;
}

FElem FieldCtx::from_code(std::uint64_t code) const {
  FElem e = zero();
  for (std::uint32_t i = 0; i < n_; ++i) {
    e.c[i] = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  return e;
}

std::strong_ordering FieldCtx::compare(const FElem& a, const FElem& b) const {
  for (std::uint32_t i = n_; i-- > 0;) {
    if (a.c[i] != b.c[i]) return a.c[i] <=> b.c[i];
  }
  return std::strong_ordering::equal;
}

std::string FieldCtx::to_string(const FElem& a) const {
  if (n_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << "[";
  for (std::uint32_t i = 0; i < n_; ++i) os << (i ? "," : "") << a.c[i];
  os << "]";
  return os.str();
}

std::uint32_t FieldCtx::to_log(const FElem& a) const {
  return tables_->log[code(a)];
}

FElem FieldCtx::from_log(std::uint32_t l) const {
  if (l == LogTables::kZero) return zero();
  return from_code(tables_->exp[l]);
}

}  // namespace k3rank
