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

#include "k3rank/zpoly.hpp"

#include <algorithm>
#include <sstream>

#include "k3rank/error.hpp"

namespace k3rank {

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

ZPoly ZPoly::from_high(const std::vector<mpz_class>& high_to_low) {
  return ZPoly(std::vector<mpz_class>(high_to_low.rbegin(), high_to_low.rend()));
}

ZPoly ZPoly::from_ints(const std::vector<long long>& low_to_high) {
  std::vector<mpz_class> v;
  for (long long x : low_to_high) v.emplace_back(std::to_string(x));
  return ZPoly(std::move(v));
}

ZPoly ZPoly::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::linear(const mpz_class& root) { return ZPoly({mpz_class(-root), mpz_class(1)}); }

void ZPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return ZPoly(std::move(r));
}

ZPoly ZPoly::scaled(const mpz_class& k) const {
  std::vector<mpz_class> r = c_;
  for (auto& v : r) v *= k;
  return ZPoly(std::move(r));
}

mpz_class ZPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(r));
}

ZPoly ZPoly::pow(unsigned e) const {
  ZPoly r = from_ints({1});
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string ZPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const mpz_class& c = c_[i];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) {
      os << mag.get_str();
      if (i > 0) os << "*";
    }
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string ZPoly::to_coeff_list() const {
  std::ostringstream os;
  for (std::size_t i = c_.size(); i-- > 0;) {
    os << c_[i].get_str();
    if (i > 0) os << " ";
  }
  return os.str();
}

std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) fail(ErrorCode::kInvalidArgument, "polynomial division by zero");
  if (a.is_zero()) return ZPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  std::vector<mpz_class> quo(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    if (!mpz_divisible_p(rem[k].get_mpz_t(), b.lead().get_mpz_t())) return std::nullopt;
    mpz_class c = rem[k] / b.lead();
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeffs()[j];
  }
  for (int j = 0; j < db; ++j) {
    if (rem[j] != 0) return std::nullopt;
  }
  return ZPoly(std::move(quo));
}

ZPoly rem_monic(const ZPoly& a, const ZPoly& b) {
  if (!b.is_monic()) fail(ErrorCode::kInvalidArgument, "rem_monic needs a monic divisor");
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    mpz_class c = rem[k];
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeffs()[j];
  }
  if (static_cast<int>(rem.size()) > db) rem.resize(db);
  return ZPoly(std::move(rem));
}

ZPoly parse_coeff_list(const std::string& text) {
  std::istringstream is(text);
  std::vector<mpz_class> high;
  std::string tok;
  while (is >> tok) {
    mpz_class v;
    if (v.set_str(tok, 10) != 0) fail(ErrorCode::kParse, "bad integer '" + tok + "'");
    high.push_back(v);
  }
  return ZPoly::from_high(high);
}

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

QPoly::QPoly(const ZPoly& z) {
  for (const auto& c : z.coeffs()) c_.emplace_back(c);
  normalize();
}

void QPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] -= o.c_[i];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> r = c_;
  mpq_class l = c_.back();
  for (auto& v : r) v /= l;
  return QPoly(std::move(r));
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::kInvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  std::vector<mpq_class> rem = a.coeffs();
  const int db = b.degree();
  std::vector<mpq_class> quo(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    mpq_class c = rem[k] / b.lead();
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeffs()[j];
  }
  rem.resize(db);
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

bool is_squarefree(const ZPoly& a) {
  QPoly q(a);
  return gcd(q, q.derivative()).degree() <= 0;
}

namespace {

int sign_changes(const std::vector<QPoly>& seq, const mpq_class& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const ZPoly& a, const mpq_class& lo, const mpq_class& hi) {
  if (a.is_zero()) fail(ErrorCode::kInvalidArgument, "root count of the zero polynomial");
  QPoly p(a);
  QPoly g = gcd(p, p.derivative());
  QPoly sq = divmod(p, g).first;  // squarefree part
  std::vector<QPoly> seq{sq, sq.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    std::vector<mpq_class> neg = r.coeffs();
    for (auto& v : neg) v = -v;
    seq.emplace_back(std::move(neg));
  }
  // Sturm counts roots in (lo, hi]; add lo itself when it is a root.
  int count = sign_changes(seq, lo) - sign_changes(seq, hi);
  if (sq.eval(lo) == 0) ++count;
  return count;
}

}  // namespace k3rank
