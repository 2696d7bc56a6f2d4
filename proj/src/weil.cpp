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

#include "k3rank/weil.hpp"

#include <sstream>

#include "k3rank/error.hpp"
#include "k3rank/linalg.hpp"

namespace k3rank {

namespace {

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

WeilPolynomial WeilPolynomial::make(const mpz_class& q, std::vector<mpz_class> a, int epsilon) {
  if (a.size() != kWeilDegree + 1 || a[0] != 1) {
    fail(ErrorCode::kInconsistent, "not a monic polynomial of degree 22");
  }
  if (epsilon != 1 && epsilon != -1) fail(ErrorCode::kInvalidArgument, "sign must be +1 or -1");
  if (q < 2) fail(ErrorCode::kInvalidArgument, "q must be a prime power");
  for (int i = 0; i <= 11; ++i) {
    if (a[kWeilDegree - i] != epsilon * zpow(q, kWeilDegree - 2 * i) * a[i]) {
      fail(ErrorCode::kInconsistent, "functional equation fails at coefficient " + std::to_string(kWeilDegree - i));
    }
  }
  WeilPolynomial w{q, std::move(a), epsilon};
  if (w.poly().eval(q) != 0) fail(ErrorCode::kInconsistent, "q is not a root");
  return w;
}

ZPoly WeilPolynomial::poly() const { return ZPoly::from_high(a); }

std::vector<mpz_class> newton_prefix(const std::vector<mpz_class>& traces, int degree) {
  const std::size_t m = traces.size();
  if (static_cast<int>(m) > degree) fail(ErrorCode::kInvalidArgument, "more traces than the degree");
  std::vector<mpz_class> a(m + 1);
  a[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    mpz_class s = traces[k - 1];
    for (std::size_t i = 1; i < k; ++i) s += a[i] * traces[k - 1 - i];
    if (s % mpz_class(static_cast<unsigned long>(k)) != 0) {
      fail(ErrorCode::kInconsistent, "traces inconsistent with integral Phi (coefficient " + std::to_string(k) + ")");
    }
    a[k] = -s / static_cast<unsigned long>(k);
  }
  a.erase(a.begin());
  return a;
}

std::vector<mpz_class> power_sums(const std::vector<mpz_class>& a_tail, std::size_t m) {
  const std::size_t d = a_tail.size();
  std::vector<mpz_class> t(m);
  for (std::size_t n = 1; n <= m; ++n) {
    mpz_class s = 0;
    for (std::size_t i = 1; i <= std::min(n - 1, d); ++i) s += a_tail[i - 1] * t[n - 1 - i];
    if (n <= d) s += static_cast<unsigned long>(n) * a_tail[n - 1];
    t[n - 1] = -s;
  }
  return t;
}

std::vector<mpz_class> power_sums(const WeilPolynomial& w, std::size_t m) {
  return power_sums(std::vector<mpz_class>(w.a.begin() + 1, w.a.end()), m);
}

bool roots_on_weil_circle(const ZPoly& phi_in, const mpz_class& q, int epsilon) {
  ZPoly phi = phi_in;
  if (epsilon == -1) {
    auto quo = exact_div(phi, ZPoly({-q * q, 0, 1}));
    if (!quo) return false;
    phi = *quo;
  }
  if (phi.degree() % 2 != 0 || !phi.is_monic()) return false;
  const int g = phi.degree() / 2;
  // t^{-g} phi(t) = P(t + q^2/t), with t^j + q^{2j} t^{-j} = D_j(u).
  std::vector<ZPoly> D{ZPoly::from_ints({2}), ZPoly::from_ints({0, 1})};
  const mpz_class q2 = q * q;
  for (int j = 2; j <= g; ++j) D.push_back(D[j - 1] * ZPoly::from_ints({0, 1}) - D[j - 2].scaled(q2));
  ZPoly P = ZPoly::monomial(phi.coeff(g), 0);
  for (int j = 1; j <= g; ++j) {
    if (phi.coeff(g - j) != zpow(q, 2 * j) * phi.coeff(g + j)) return false;
    P = P + D[j].scaled(phi.coeff(g + j));
  }
  const QPoly Pq(P);
  const int distinct = P.degree() - gcd(Pq, Pq.derivative()).degree();
  mpq_class bound(2 * q);
  return count_real_roots(P, -bound, bound) == distinct;
}

int root_multiplicity(const ZPoly& phi, const mpz_class& root) {
  if (phi.is_zero()) fail(ErrorCode::kInvalidArgument, "multiplicity in the zero polynomial");
  int m = 0;
  ZPoly cur = phi;
  const ZPoly lin = ZPoly::linear(root);
  while (auto quo = exact_div(cur, lin)) {
    cur = *quo;
    ++m;
  }
  return m;
}

namespace {

enum class SignOutcome { kAccepted, kRejected, kUnderdetermined };

struct Attempt {
  SignOutcome outcome = SignOutcome::kRejected;
  std::string note;
  std::vector<mpz_class> coeffs;
};

std::string sign_name(int eps) { return eps > 0 ? "+1" : "-1"; }

Attempt try_sign(int eps, const std::vector<mpz_class>& traces, const std::vector<mpz_class>& prefix,
                 const mpz_class& q, const std::vector<ZPoly>& known) {
  Attempt at;
  const std::string tag = "sign " + sign_name(eps) + ": ";
  const int used = static_cast<int>(prefix.size());
  if (eps < 0 && used >= 11 && prefix[10] != 0) {
    at.note = tag + "rejected, middle coefficient a_11 = " + prefix[10].get_str() + " must vanish";
    return at;
  }
  std::vector<int> unknown;
  for (int i = used + 1; i <= (eps > 0 ? 11 : 10); ++i) unknown.push_back(i);
  const std::size_t U = unknown.size();

  // Each a_i as constant + sum_u coef_u x_u.
  std::vector<std::vector<mpq_class>> A(kWeilDegree + 1, std::vector<mpq_class>(U + 1, 0));
  A[0][0] = 1;
  for (int i = 1; i <= std::min(used, 11); ++i) A[i][0] = prefix[i - 1];
  for (std::size_t u = 0; u < U; ++u) A[unknown[u]][u + 1] = 1;
  for (int i = 12; i <= kWeilDegree; ++i) {
    mpz_class f = eps * zpow(q, 2 * i - kWeilDegree);
    for (std::size_t u = 0; u <= U; ++u) A[i][u] = A[kWeilDegree - i][u] * f;
  }

  std::vector<std::vector<mpq_class>> rows;
  auto add_row = [&](const std::vector<mpq_class>& affine) {
    bool trivial = true;
    for (const auto& v : affine) trivial = trivial && v == 0;
    if (!trivial) rows.push_back(affine);
  };
  {
    std::vector<mpq_class> r(U + 1, 0);
    for (int i = 0; i <= kWeilDegree; ++i) {
      mpz_class w = zpow(q, kWeilDegree - i);
      for (std::size_t u = 0; u <= U; ++u) r[u] += A[i][u] * w;
    }
    add_row(r);
  }
  for (const auto& F : known) {
    std::vector<ZPoly> rem;
    for (int j = 0; j <= kWeilDegree; ++j) rem.push_back(rem_monic(ZPoly::monomial(1, j), F));
    for (int c = 0; c < F.degree(); ++c) {
      std::vector<mpq_class> r(U + 1, 0);
      for (int i = 0; i <= kWeilDegree; ++i) {
        const mpz_class w = rem[kWeilDegree - i].coeff(c);
        if (w == 0) continue;
        for (std::size_t u = 0; u <= U; ++u) r[u] += A[i][u] * w;
      }
      add_row(r);
    }
  }

  std::vector<mpq_class> x(U, 0);
  if (!rows.empty()) {
    QMatrix M;
    std::vector<mpq_class> b;
    for (const auto& r : rows) {
      M.emplace_back(r.begin() + 1, r.end());
      b.push_back(-r[0]);
    }
    if (U == 0) {
      at.note = tag + "rejected, constraint Phi(q) = 0 or a known factor fails";
      return at;
    }
    auto sol = solve_rational(M, b);
    if (!sol.consistent) {
      at.note = tag + "rejected, linear constraints are inconsistent";
      return at;
    }
    if (!sol.unique) {
      at.outcome = SignOutcome::kUnderdetermined;
      at.note = tag + std::to_string(U - sol.rank) + " coefficient(s) left undetermined";
      return at;
    }
    x = *sol.unique;
  } else if (U > 0) {
    at.outcome = SignOutcome::kUnderdetermined;
    at.note = tag + std::to_string(U) + " coefficient(s) left undetermined";
    return at;
  }

  std::vector<mpz_class> a(kWeilDegree + 1);
  for (int i = 0; i <= kWeilDegree; ++i) {
    mpq_class v = A[i][0];
    for (std::size_t u = 0; u < U; ++u) v += A[i][u + 1] * x[u];
    v.canonicalize();
    if (v.get_den() != 1) {
      at.note = tag + "rejected, coefficient " + std::to_string(i) + " is not integral";
      return at;
    }
    a[i] = v.get_num();
  }
  auto sums = power_sums(std::vector<mpz_class>(a.begin() + 1, a.end()), traces.size());
  for (std::size_t n = 0; n < traces.size(); ++n) {
    if (sums[n] != traces[n]) {
      at.note = tag + "rejected, trace t_" + std::to_string(n + 1) + " not reproduced";
      return at;
    }
  }
  ZPoly phi = ZPoly::from_high(a);
  if (phi.eval(q) != 0) {
    at.note = tag + "rejected, q is not a root";
    return at;
  }
  for (const auto& F : known) {
    if (!exact_div(phi, F)) {
      at.note = tag + "rejected, known factor " + F.to_string() + " does not divide";
      return at;
    }
  }
  if (!roots_on_weil_circle(phi, q, eps)) {
    at.note = tag + "rejected, roots off the circle |t| = q";
    return at;
  }
  at.outcome = SignOutcome::kAccepted;
  at.note = tag + "consistent";
  at.coeffs = std::move(a);
  return at;
}

}  // namespace

WeilPolynomial reconstruct(const std::vector<mpz_class>& traces, const mpz_class& q, const std::vector<ZPoly>& known,
                           ReconstructReport* report) {
  if (traces.empty()) fail(ErrorCode::kInsufficientData, "insufficient data: no traces");
  for (const auto& F : known) {
    if (!F.is_monic() || F.degree() < 1) fail(ErrorCode::kInvalidArgument, "known factors must be monic and nonconstant");
  }
  const std::size_t used = std::min<std::size_t>(traces.size(), 11);
  auto prefix = newton_prefix(std::vector<mpz_class>(traces.begin(), traces.begin() + used));
  ReconstructReport local;
  ReconstructReport& rep = report ? *report : local;
  rep.notes.clear();
  rep.traces_used = static_cast<int>(used);
  rep.traces_checked = static_cast<int>(traces.size() - used);

  std::vector<Attempt> attempts{try_sign(1, traces, prefix, q, known), try_sign(-1, traces, prefix, q, known)};
  int accepted = 0;
  bool under = false;
  for (const auto& at : attempts) {
    rep.notes.push_back(at.note);
    accepted += at.outcome == SignOutcome::kAccepted;
    under = under || at.outcome == SignOutcome::kUnderdetermined;
  }
  auto joined = [&] {
    std::ostringstream os;
    for (const auto& n : rep.notes) os << "; " << n;
    return os.str();
  };
  if (under) fail(ErrorCode::kInsufficientData, "insufficient data" + joined());
  if (accepted == 2) fail(ErrorCode::kAmbiguous, "ambiguous, both signs are consistent; supply more traces" + joined());
  if (accepted == 0) fail(ErrorCode::kInconsistent, "no sign yields a Weil polynomial" + joined());
  for (std::size_t s = 0; s < 2; ++s) {
    if (attempts[s].outcome == SignOutcome::kAccepted) return WeilPolynomial::make(q, attempts[s].coeffs, s == 0 ? 1 : -1);
  }
  fail(ErrorCode::kInternal, "unreachable");
}

WeilPolynomial base_change(const WeilPolynomial& w, unsigned k) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "base change degree must be >= 1");
  if (k == 1) return w;
  auto sums = power_sums(w, static_cast<std::size_t>(kWeilDegree) * k);
  std::vector<mpz_class> tk;
  for (int j = 1; j <= kWeilDegree; ++j) tk.push_back(sums[static_cast<std::size_t>(j) * k - 1]);
  std::vector<mpz_class> a;
  try {
    a = newton_prefix(tk);
  } catch (const Error&) {
    fail(ErrorCode::kInternal, "base change produced a non-integral polynomial");
  }
  a.insert(a.begin(), mpz_class(1));
  const mpz_class qk = zpow(w.q, k);
  const mpz_class top = zpow(qk, kWeilDegree);
  int eps = 0;
  if (a[kWeilDegree] == top) eps = 1;
  if (a[kWeilDegree] == -top) eps = -1;
  if (eps == 0) fail(ErrorCode::kInternal, "base change violates the functional equation");
  try {
    return WeilPolynomial::make(qk, std::move(a), eps);
  } catch (const Error& e) {
    fail(ErrorCode::kInternal, std::string("base change inconsistent: ") + e.what());
  }
}

}  // namespace k3rank
