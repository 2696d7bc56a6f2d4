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

#include "k3rank/unipoly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "k3rank/error.hpp"

namespace k3rank {

UniPoly::UniPoly(FieldPtr field) : field_(std::move(field)) {}

UniPoly::UniPoly(FieldPtr field, std::vector<FElem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  normalize();
}

UniPoly UniPoly::constant(FieldPtr field, FElem c) {
  return UniPoly(std::move(field), std::vector<FElem>{std::move(c)});
}

UniPoly UniPoly::monomial(FieldPtr field, FElem c, std::size_t degree) {
  std::vector<FElem> v(degree + 1, field->zero());
  v[degree] = std::move(c);
  return UniPoly(std::move(field), std::move(v));
}

UniPoly UniPoly::x(FieldPtr field) {
  FElem one = field->one();
  return monomial(std::move(field), one, 1);
}

UniPoly UniPoly::from_ints(FieldPtr field, const std::vector<long long>& coeffs) {
  std::vector<FElem> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.push_back(field->from_int(c));
  return UniPoly(std::move(field), std::move(v));
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && field_->is_zero(coeffs_.back())) coeffs_.pop_back();
}

FElem UniPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : field_->zero();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  const FieldCtx& f = *field_;
  std::vector<FElem> r(std::max(coeffs_.size(), o.coeffs_.size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(coeff(i), o.coeff(i));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  const FieldCtx& f = *field_;
  std::vector<FElem> r(std::max(coeffs_.size(), o.coeffs_.size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(coeff(i), o.coeff(i));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-() const {
  std::vector<FElem> r = coeffs_;
  for (auto& c : r) c = field_->neg(c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  const FieldCtx& f = *field_;
  std::vector<FElem> r(coeffs_.size() + o.coeffs_.size() - 1, f.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (f.is_zero(coeffs_[i])) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      r[i + j] = f.add(r[i + j], f.mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::scaled(const FElem& c) const {
  std::vector<FElem> r = coeffs_;
  for (auto& v : r) v = field_->mul(v, c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly(field_);
  std::vector<FElem> r(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    r[i - 1] = field_->scale(coeffs_[i], static_cast<std::uint32_t>(i % field_->characteristic()));
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<FElem> r(k, field_->zero());
  r.insert(r.end(), coeffs_.begin(), coeffs_.end());
  return UniPoly(field_, std::move(r));
}

FElem UniPoly::eval(const FElem& v) const {
  const FieldCtx& f = *field_;
  FElem acc = f.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = f.add(f.mul(acc, v), coeffs_[i]);
  return acc;
}

UniPoly UniPoly::frobenius(std::uint32_t times) const {
  std::vector<FElem> r = coeffs_;
  for (auto& c : r) c = field_->frobenius(c, times);
  return UniPoly(field_, std::move(r));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (field_->is_zero(coeffs_[i])) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = field_->is_one(coeffs_[i]);
    if (!unit || i == 0) os << field_->to_string(coeffs_[i]);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) fail(ErrorCode::kInvalidArgument, "polynomial division by zero");
  const FieldCtx& f = b.ctx();
  if (a.degree() < b.degree()) return {UniPoly(b.field()), a};
  std::vector<FElem> rem = a.coeffs();
  const int db = b.degree();
  std::vector<FElem> quo(a.degree() - db + 1, f.zero());
  const FElem inv_lead = f.inv(b.lead());
  for (int k = a.degree(); k >= db; --k) {
    if (f.is_zero(rem[k])) continue;
    FElem c = f.mul(rem[k], inv_lead);
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) {
      rem[k - db + j] = f.sub(rem[k - db + j], f.mul(c, b.coeffs()[j]));
    }
  }
  rem.resize(db);
  return {UniPoly(b.field(), std::move(quo)), UniPoly(b.field(), std::move(rem))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod) {
  UniPoly r = UniPoly::constant(mod.field(), mod.ctx().one()) % mod;
  UniPoly b = base % mod;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
  }
  return r;
}

bool canonical_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto c = a.ctx().compare(a.coeffs()[i], b.coeffs()[i]);
    if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
  }
  return false;
}

UniPoly Factorization::expand(const FieldPtr& field) const {
  UniPoly r = UniPoly::constant(field, unit);
  for (const auto& f : factors) {
    for (int i = 0; i < f.multiplicity; ++i) r = r * f.poly;
  }
  return r;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
UniPoly pth_root(const UniPoly& f) {
  const FieldCtx& ctx = f.ctx();
  const std::uint32_t p = ctx.characteristic();
  std::vector<FElem> r(f.degree() / p + 1, ctx.zero());
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
    // Inverse Frobenius on F_{p^n} is e -> e^{p^{n-1}}.
    r[i / p] = ctx.frobenius(f.coeffs()[i], ctx.degree() - 1);
  }
  return UniPoly(f.field(), std::move(r));
}

void sfd_monic(const UniPoly& f, int scale, std::vector<PolyFactor>& out) {
  if (f.degree() <= 0) return;
  UniPoly one = UniPoly::constant(f.field(), f.ctx().one());
  UniPoly c = gcd(f, f.derivative());
  UniPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(w, c);
    UniPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    sfd_monic(pth_root(c).monic(), scale * static_cast<int>(f.ctx().characteristic()), out);
  }
}

FElem random_elem(const FieldCtx& f, std::mt19937_64& rng) {
  FElem e = f.zero();
  std::uniform_int_distribution<std::uint32_t> dist(0, f.characteristic() - 1);
  for (auto& d : e.c) d = dist(rng);
  return e;
}

}  // namespace

Factorization squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) fail(ErrorCode::kInvalidArgument, "squarefree decomposition of zero");
  Factorization out;
  out.unit = f.lead();
  std::vector<PolyFactor> parts;
  sfd_monic(f.monic(), 1, parts);
  // Merge equal multiplicities (possible after p-th root recursion).
  std::sort(parts.begin(), parts.end(),
            [](const PolyFactor& a, const PolyFactor& b) { return a.multiplicity < b.multiplicity; });
  for (auto& p : parts) {
    if (!out.factors.empty() && out.factors.back().multiplicity == p.multiplicity) {
      out.factors.back().poly = out.factors.back().poly * p.poly;
    } else {
      out.factors.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<UniPoly> distinct_degree_parts(const UniPoly& f) {
  std::vector<UniPoly> parts;
  UniPoly g = f.monic();
  const UniPoly x = UniPoly::x(f.field());
  UniPoly h = x % g;
  const mpz_class& q = f.ctx().cardinality();
  int d = 0;
  while (g.degree() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, q, g);
    UniPoly t = gcd(g, h - x);
    parts.resize(d, UniPoly::constant(f.field(), f.ctx().one()));
    if (t.degree() > 0) {
      parts[d - 1] = t;
      g = g / t;
      h = h % g;
    }
  }
  if (g.degree() > 0) {
    parts.resize(g.degree(), UniPoly::constant(f.field(), f.ctx().one()));
    parts[g.degree() - 1] = g;
  }
  return parts;
}

std::vector<UniPoly> equal_degree_split(const UniPoly& f, int d, std::uint64_t seed) {
  std::vector<UniPoly> out;
  if (f.degree() <= 0) return out;
  if (f.degree() == d) {
    out.push_back(f.monic());
    return out;
  }
  std::mt19937_64 rng(seed);
  const FieldCtx& ctx = f.ctx();
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), ctx.cardinality().get_mpz_t(), d);
  e = (e - 1) / 2;
  const UniPoly one = UniPoly::constant(f.field(), ctx.one());
  std::vector<UniPoly> work{f.monic()};
  while (!work.empty()) {
    UniPoly g = std::move(work.back());
    work.pop_back();
    if (g.degree() == d) {
      out.push_back(g);
      continue;
    }
    for (;;) {
      std::vector<FElem> coeffs(g.degree());
      for (auto& c : coeffs) c = random_elem(ctx, rng);
      UniPoly a(f.field(), std::move(coeffs));
      if (a.degree() <= 0) continue;
      UniPoly b = powmod(a, e, g) - one;
      UniPoly s = gcd(b, g);
      if (s.degree() > 0 && s.degree() < g.degree()) {
        work.push_back(g / s);
        work.push_back(s);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Factorization factorize(const UniPoly& f, std::uint64_t seed) {
  Factorization sfd = squarefree_decomposition(f);
  Factorization out;
  out.unit = sfd.unit;
  std::uint64_t salt = seed;
  for (const auto& part : sfd.factors) {
    auto ddf = distinct_degree_parts(part.poly);
    for (std::size_t d = 1; d <= ddf.size(); ++d) {
      if (ddf[d - 1].degree() <= 0) continue;
      for (auto& g : equal_degree_split(ddf[d - 1], static_cast<int>(d), salt++)) {
        out.factors.push_back({std::move(g), part.multiplicity});
      }
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PolyFactor& a, const PolyFactor& b) { return canonical_less(a.poly, b.poly); });
  return out;
}

std::vector<FElem> roots(const UniPoly& f, std::uint64_t seed) {
  if (f.is_zero()) fail(ErrorCode::kInvalidArgument, "roots of the zero polynomial");
  std::vector<FElem> out;
  if (f.degree() <= 0) return out;
  const UniPoly x = UniPoly::x(f.field());
  UniPoly g = f.monic();
  UniPoly split = gcd(g, powmod(x, f.ctx().cardinality(), g) - x);
  for (const auto& lin : equal_degree_split(split, 1, seed)) {
    out.push_back(f.ctx().neg(lin.coeffs()[0]));
  }
  const FieldCtx& ctx = f.ctx();
  std::sort(out.begin(), out.end(), [&](const FElem& a, const FElem& b) { return ctx.less(a, b); });
  return out;
}

bool is_irreducible(const UniPoly& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  const UniPoly g = f.monic();
  if (gcd(g, g.derivative()).degree() > 0) return false;
  auto parts = distinct_degree_parts(g);
  return static_cast<int>(parts.size()) == g.degree() && parts.back().degree() == g.degree();
}

FElem resultant(const UniPoly& a, const UniPoly& b) {
  const FieldCtx& f = a.ctx();
  if (a.is_zero() || b.is_zero()) return f.zero();
  const int m = a.degree(), n = b.degree();
  if (n == 0) return f.pow(b.lead(), static_cast<std::uint64_t>(m));
  if (m == 0) return f.pow(a.lead(), static_cast<std::uint64_t>(n));
  UniPoly r = a % b;
  if (r.is_zero()) return f.zero();
  const int k = r.degree();
  FElem out = f.mul(f.pow(b.lead(), static_cast<std::uint64_t>(m - k)), resultant(b, r));
  if ((m * n) % 2 == 1) out = f.neg(out);
  return out;
}

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_->characteristic() != dst_->characteristic()) {
    fail(ErrorCode::kInvalidArgument, "embedding between fields of different characteristic");
  }
  if (dst_->degree() % src_->degree() != 0) {
    fail(ErrorCode::kInvalidArgument, "cannot embed " + src_->describe() + " into " + dst_->describe() +
                                          ": degree does not divide");
  }
  std::vector<FElem> mod;
  for (std::uint32_t c : src_->modulus()) mod.push_back(dst_->from_int(c));
  auto rs = roots(UniPoly(dst_, std::move(mod)));
  if (rs.empty()) fail(ErrorCode::kInternal, "modulus has no root in the target field");
  *this = Embedding(src_, dst_, rs.front());
}

Embedding::Embedding(FieldPtr src, FieldPtr dst, FElem image_of_gen)
    : src_(std::move(src)), dst_(std::move(dst)), image_(std::move(image_of_gen)) {
  if (src_->characteristic() != dst_->characteristic()) {
    fail(ErrorCode::kInvalidArgument, "embedding between fields of different characteristic");
  }
  std::vector<FElem> mod;
  for (std::uint32_t c : src_->modulus()) mod.push_back(dst_->from_int(c));
  if (!dst_->is_zero(UniPoly(dst_, std::move(mod)).eval(image_))) {
    fail(ErrorCode::kInvalidArgument, "image of the generator is not a root of the modulus");
  }
  powers_.push_back(dst_->one());
  for (std::uint32_t i = 1; i < src_->degree(); ++i) powers_.push_back(dst_->mul(powers_.back(), image_));
}

FElem Embedding::operator()(const FElem& e) const {
  FElem acc = dst_->zero();
  for (std::uint32_t i = 0; i < src_->degree(); ++i) {
    if (e.c[i] != 0) acc = dst_->add(acc, dst_->scale(powers_[i], e.c[i]));
  }
  return acc;
}

UniPoly Embedding::operator()(const UniPoly& f) const {
  std::vector<FElem> r;
  r.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) r.push_back((*this)(c));
  return UniPoly(dst_, std::move(r));
}

FElem embed(const FieldPtr& src, const FieldPtr& dst, const FElem& e) {
  return Embedding(src, dst)(e);
}

}  // namespace k3rank
