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

#include "k3rank/surface.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "k3rank/error.hpp"

namespace k3rank {

SexticForm::SexticForm() {
  for (auto& c : c_) c = 0;
}

std::vector<mpz_class> parse_monomial_lines(const std::string& text, int degree) {
  std::vector<mpz_class> out(TernaryForm::monomial_count(degree), 0);
  std::set<int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok.size() != 4) fail(ErrorCode::kParse, where + "expected 'coefficient a b c'");
    mpz_class c;
    std::string cs = tok[0];
    if (!cs.empty() && cs[0] == '+') cs.erase(0, 1);
    if (cs.empty() || c.set_str(cs, 10) != 0) fail(ErrorCode::kParse, where + "bad coefficient '" + tok[0] + "'");
    int e[3];
    for (int i = 0; i < 3; ++i) {
      std::size_t used = 0;
      try {
        e[i] = std::stoi(tok[i + 1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[i + 1].size() || e[i] < 0) fail(ErrorCode::kParse, where + "bad exponent '" + tok[i + 1] + "'");
    }
    if (e[0] + e[1] + e[2] != degree) {
      fail(ErrorCode::kParse, where + "monomial degree " + std::to_string(e[0] + e[1] + e[2]) + " is not " +
                                  std::to_string(degree));
    }
    int idx = TernaryForm::index_of(degree, e[0], e[1]);
    if (!seen.insert(idx).second) fail(ErrorCode::kParse, where + "duplicate monomial");
    out[idx] = c;
  }
  return out;
}

TernaryForm parse_plane_form(const std::string& text, int degree, const FieldPtr& field) {
  auto c = parse_monomial_lines(text, degree);
  TernaryForm f(field, degree);
  const mpz_class p = field->characteristic();
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), p.get_mpz_t());
    auto e = TernaryForm::exponents_of(degree, i);
    f.set(e[0], e[1], field->from_int(r.get_si()));
  }
  return f;
}

TernaryForm load_plane_form(const std::string& path, int degree, const FieldPtr& field) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot read form file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_plane_form(ss.str(), degree, field);
}

SexticForm SexticForm::parse(const std::string& text) {
  SexticForm f;
  auto c = parse_monomial_lines(text, kDegree);
  for (int i = 0; i < kTerms; ++i) f.c_[i] = c[i];
  if (f.is_zero()) fail(ErrorCode::kParse, "sextic form is zero");
  return f;
}

SexticForm SexticForm::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot read sextic file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const mpz_class& SexticForm::coeff(int a, int b) const { return c_[TernaryForm::index_of(kDegree, a, b)]; }

void SexticForm::set(int a, int b, const mpz_class& c) { c_[TernaryForm::index_of(kDegree, a, b)] = c; }

bool SexticForm::is_zero() const {
  for (const auto& c : c_) {
    if (c != 0) return false;
  }
  return true;
}

std::string SexticForm::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < kTerms; ++i) {
    if (c_[i] == 0) continue;
    auto e = TernaryForm::exponents_of(kDegree, i);
    os << c_[i].get_str() << ' ' << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
  }
  return os.str();
}

TernaryForm SexticForm::reduce(const FieldPtr& field) const {
  TernaryForm f(field, kDegree);
  const mpz_class p = field->characteristic();
  for (int i = 0; i < kTerms; ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c_[i].get_mpz_t(), p.get_mpz_t());
    auto e = TernaryForm::exponents_of(kDegree, i);
    f.set(e[0], e[1], field->from_int(r.get_si()));
  }
  return f;
}

SurfaceModel::SurfaceModel(SexticForm form, std::uint32_t p, const FieldOptions& options)
    : form_(std::move(form)), p_(p), options_(options) {
  fp_ = FieldCtx::make(p, 1, options_);
  reduced_ = form_.reduce(fp_);
  if (reduced_.is_zero()) fail(ErrorCode::kDegenerate, "sextic vanishes mod " + std::to_string(p));
}

TernaryForm SurfaceModel::over(const FieldPtr& field) const {
  if (field->characteristic() != p_) fail(ErrorCode::kInvalidArgument, "field characteristic differs from the model prime");
  return form_.reduce(field);
}

FElem SurfaceModel::evaluate(const FieldPtr& field, const Point3& point) const {
  return over(field).eval(normalize_point(*field, point));
}

namespace {

// Coefficients in z of A(x0, y0, z).
UniPoly z_slice(const TernaryForm& A, const FElem& x0, const FElem& y0) {
  const FieldCtx& f = A.ctx();
  const int d = A.degree();
  std::vector<FElem> xp(d + 1, f.one()), yp(d + 1, f.one());
  for (int i = 1; i <= d; ++i) {
    xp[i] = f.mul(xp[i - 1], x0);
    yp[i] = f.mul(yp[i - 1], y0);
  }
  std::vector<FElem> cz(d + 1, f.zero());
  for (int i = 0; i < TernaryForm::monomial_count(d); ++i) {
    const FElem& c = A.coeffs()[i];
    if (f.is_zero(c)) continue;
    auto e = TernaryForm::exponents_of(d, i);
    cz[e[2]] = f.add(cz[e[2]], f.mul(c, f.mul(xp[e[0]], yp[e[1]])));
  }
  return UniPoly(A.field(), std::move(cz));
}

// Degree in z of A(x, 1, z) over F_p[x].
int z_degree(const TernaryForm& A) {
  int deg = -1;
  for (int i = 0; i < TernaryForm::monomial_count(A.degree()); ++i) {
    if (!A.ctx().is_zero(A.coeffs()[i])) deg = std::max(deg, TernaryForm::exponents_of(A.degree(), i)[2]);
  }
  return deg;
}

// A(x, 1, 0) for a form free of z.
UniPoly x_poly(const TernaryForm& A) {
  std::vector<FElem> c(A.degree() + 1, A.ctx().zero());
  for (int a = 0; a <= A.degree(); ++a) c[a] = A.coeff(a, A.degree() - a);
  return UniPoly(A.field(), std::move(c));
}

TernaryForm lift_prime(const TernaryForm& A, const FieldPtr& K) {
  TernaryForm r(K, A.degree());
  for (int i = 0; i < TernaryForm::monomial_count(A.degree()); ++i) {
    auto e = TernaryForm::exponents_of(A.degree(), i);
    r.set(e[0], e[1], K->from_int(A.coeffs()[i].c[0]));
  }
  return r;
}

UniPoly lift_prime(const UniPoly& u, const FieldPtr& K) {
  std::vector<FElem> c;
  for (const auto& e : u.coeffs()) c.push_back(K->from_int(e.c[0]));
  return UniPoly(K, std::move(c));
}

FElem det_in_field(const FieldCtx& f, std::vector<std::vector<FElem>> m) {
  const std::size_t n = m.size();
  FElem det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && f.is_zero(m[piv][col])) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = f.neg(det);
    }
    det = f.mul(det, m[col][col]);
    FElem inv = f.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (f.is_zero(m[r][col])) continue;
      FElem factor = f.mul(m[r][col], inv);
      for (std::size_t c = col; c < n; ++c) m[r][c] = f.sub(m[r][c], f.mul(factor, m[col][c]));
    }
  }
  return det;
}

// Sylvester determinant with formal degrees da, db.
FElem sylvester(const UniPoly& a, int da, const UniPoly& b, int db) {
  const FieldCtx& f = a.ctx();
  const int n = da + db;
  std::vector<std::vector<FElem>> m(n, std::vector<FElem>(n, f.zero()));
  for (int i = 0; i < db; ++i) {
    for (int k = 0; k <= da; ++k) m[i][i + k] = a.coeff(da - k);
  }
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k <= db; ++k) m[db + i][i + k] = b.coeff(db - k);
  }
  return det_in_field(f, std::move(m));
}

UniPoly interpolate(const FieldPtr& field, const std::vector<FElem>& xs, std::vector<FElem> ys) {
  const FieldCtx& f = *field;
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = f.div(f.sub(ys[i], ys[i - 1]), f.sub(xs[i], xs[i - j]));
    }
  }
  UniPoly acc = UniPoly::constant(field, ys[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = acc * UniPoly(field, {f.neg(xs[i]), f.one()}) + UniPoly::constant(field, ys[i]);
  }
  return acc;
}

class Eliminator {
 public:
  Eliminator(const SurfaceModel& model, std::uint64_t seed) : model_(model), seed_(seed) {
    const TernaryForm& F = model.reduced();
    gens_.push_back(F);
    int nonzero_partials = 0;
    for (int v = 0; v < 3; ++v) {
      TernaryForm d = F.partial(v);
      if (!d.is_zero()) {
        gens_.push_back(d);
        ++nonzero_partials;
      }
    }
    if (nonzero_partials == 0) fail(ErrorCode::kDegenerate, "all partial derivatives vanish identically");
    std::uint32_t k = 1;
    while (ipow(model.p(), k) < 40) ++k;
    FieldOptions opts = model.options();
    opts.cardinality_limit = std::max<std::uint64_t>(opts.cardinality_limit, ipow(model.p(), k));
    eval_field_ = FieldCtx::make(model.p(), k, opts);
  }

  ReductionReport run() {
    const FieldPtr& fp = model_.prime_field();
    // [0:0:1]
    if (vanish_all(gens_, {fp->zero(), fp->zero(), fp->one()})) {
      return bad_point(fp, {fp->zero(), fp->zero(), fp->one()});
    }
    // Points [1:0:z].
    {
      UniPoly g(fp);
      bool all_zero = true;
      for (const auto& G : gens_) {
        UniPoly s = z_slice(G, fp->one(), fp->zero());
        if (s.is_zero()) continue;
        all_zero = false;
        g = gcd(g, s);
      }
      if (all_zero) return bad_point(fp, {fp->one(), fp->zero(), fp->zero()});
      if (g.degree() > 0) {
        auto fac = factorize(g, seed_);
        auto w = realize_on_line(fac.factors.front().poly);
        if (w) return *w;
      }
    }
    // Points [x:1:z]: candidates for x from resultants in z.
    UniPoly rg(fp);
    bool any = false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (std::size_t j = i + 1; j < gens_.size(); ++j) {
        UniPoly r = resultant_in_x(gens_[i], gens_[j]);
        if (r.is_zero()) continue;
        any = true;
        rg = gcd(rg, r);
      }
    }
    if (!any) return brute_force_fallback();
    if (rg.degree() <= 0) return {true, std::nullopt};
    for (const auto& part : factorize(rg, seed_).factors) {
      auto w = check_x_factor(part.poly);
      if (w) return *w;
    }
    return {true, std::nullopt};
  }

 private:
  static bool vanish_all(const std::vector<TernaryForm>& gs, const Point3& p) {
    for (const auto& G : gs) {
      if (!G.ctx().is_zero(G.eval(p))) return false;
    }
    return true;
  }

  ReductionReport bad_point(const FieldPtr& field, const Point3& p, std::string note = "") {
    SingularWitness w;
    w.point = normalize_point(*field, p);
    w.field = field;
    w.field_degree = static_cast<int>(field->degree());
    w.description = "singular point " + point_to_string(*field, *w.point) + " over " + field->describe();
    if (!note.empty()) w.description += " (" + note + ")";
    return {false, w};
  }

  ReductionReport unrealized(int degree, std::string text) {
    SingularWitness w;
    w.field_degree = degree;
    w.description = std::move(text);
    return {false, w};
  }

  bool within_limit(int degree) const {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), model_.p(), degree);
    return q <= mpz_class(std::to_string(model_.options().cardinality_limit));
  }

  std::vector<TernaryForm> gens_over(const FieldPtr& K) const {
    std::vector<TernaryForm> r;
    for (const auto& G : gens_) r.push_back(lift_prime(G, K));
    return r;
  }

  // psi: an irreducible factor of the gcd along y = 0, x = 1.
  std::optional<ReductionReport> realize_on_line(const UniPoly& psi) {
    const int e = psi.degree();
    if (!within_limit(e)) {
      return unrealized(e, "singular point [1 : 0 : z] with z a root of " + psi.to_string("z"));
    }
    FieldPtr E = FieldCtx::make(model_.p(), e, model_.options());
    auto rs = roots(lift_prime(psi, E), seed_);
    Point3 pt{E->one(), E->zero(), rs.front()};
    if (!vanish_all(gens_over(E), pt)) fail(ErrorCode::kInternal, "singular point failed verification");
    return bad_point(E, pt);
  }

  UniPoly resultant_in_x(const TernaryForm& A, const TernaryForm& B) {
    const FieldPtr& fp = model_.prime_field();
    const int da = z_degree(A), db = z_degree(B);
    if (da == 0 && db == 0) return gcd(x_poly(A), x_poly(B));
    if (da == 0) return x_poly(A);
    if (db == 0) return x_poly(B);
    const FieldPtr& E = eval_field_;
    TernaryForm AE = lift_prime(A, E), BE = lift_prime(B, E);
    const int bound = A.degree() * B.degree();
    const std::size_t need = bound + 1, checks = 3;
    if (E->size() < need + checks) fail(ErrorCode::kInternal, "evaluation field too small");
    std::vector<FElem> xs, ys;
    for (std::uint64_t c = 0; c < need + checks; ++c) {
      FElem x0 = E->from_code(c);
      xs.push_back(x0);
      ys.push_back(sylvester(z_slice(AE, x0, E->one()), da, z_slice(BE, x0, E->one()), db));
    }
    std::vector<FElem> xi(xs.begin(), xs.begin() + need), yi(ys.begin(), ys.begin() + need);
    UniPoly r = interpolate(E, xi, yi);
    for (std::size_t k = need; k < xs.size(); ++k) {
      if (!(r.eval(xs[k]) == ys[k])) fail(ErrorCode::kInternal, "resultant exceeds its degree bound");
    }
    std::vector<FElem> out;
    for (const auto& c : r.coeffs()) {
      if (!E->in_prime_field(c)) fail(ErrorCode::kInternal, "resultant has coefficients outside F_p");
      out.push_back(fp->from_int(c.c[0]));
    }
    return UniPoly(fp, std::move(out));
  }

  std::optional<ReductionReport> check_x_factor(const UniPoly& phi) {
    const std::uint32_t p = model_.p();
    const int d = phi.degree();
    std::vector<std::uint32_t> digits;
    for (const auto& c : phi.coeffs()) digits.push_back(c.c[0]);
    FieldPtr K = FieldCtx::with_modulus(p, digits);
    const FElem t = K->gen();
    UniPoly g(K);
    bool all_zero = true;
    for (const auto& G : gens_over(K)) {
      UniPoly s = z_slice(G, t, K->one());
      if (s.is_zero()) continue;
      all_zero = false;
      g = gcd(g, s);
    }
    if (!all_zero && g.degree() <= 0) return std::nullopt;
    const int e = all_zero ? 1 : factorize(g, seed_).factors.front().poly.degree();
    const int m = d * e;
    if (!within_limit(m)) {
      return unrealized(m, "singular point [x : 1 : z] with x a root of " + phi.to_string("x") +
                               " and z of degree " + std::to_string(e) + " over F_p(x)");
    }
    FieldPtr E = FieldCtx::make(p, m, model_.options());
    auto gens = gens_over(E);
    for (const FElem& x0 : roots(lift_prime(phi, E), seed_)) {
      UniPoly h(E);
      bool zero = true;
      for (const auto& G : gens) {
        UniPoly s = z_slice(G, x0, E->one());
        if (s.is_zero()) continue;
        zero = false;
        h = gcd(h, s);
      }
      if (zero) return bad_point(E, {x0, E->one(), E->zero()}, "a whole line of singular points");
      auto zs = roots(h, seed_);
      if (zs.empty()) continue;
      Point3 pt{x0, E->one(), zs.front()};
      if (!vanish_all(gens, pt)) fail(ErrorCode::kInternal, "singular point failed verification");
      return bad_point(E, pt);
    }
    fail(ErrorCode::kInternal, "singular fiber could not be realized");
  }

  ReductionReport brute_force_fallback() {
    for (int k = 1; k <= 4 && within_limit(k); ++k) {
      FieldPtr E = FieldCtx::make(model_.p(), k, model_.options());
      auto pts = brute_force_singular_points(model_, E);
      if (!pts.empty()) return bad_point(E, pts.front(), "the curve and its partials share a component");
    }
    return unrealized(0, "the curve and its partials share a component");
  }

  const SurfaceModel& model_;
  std::uint64_t seed_;
  std::vector<TernaryForm> gens_;
  FieldPtr eval_field_;
};

}  // namespace

ReductionReport good_reduction(const SurfaceModel& model, std::uint64_t seed) {
  return Eliminator(model, seed).run();
}

std::vector<Point3> projective_points(const FieldPtr& field) {
  const FieldCtx& f = *field;
  const std::uint64_t q = f.size();
  std::vector<Point3> pts;
  pts.reserve(q * q + q + 1);
  pts.push_back({f.zero(), f.zero(), f.one()});
  for (std::uint64_t b = 0; b < q; ++b) pts.push_back({f.zero(), f.one(), f.from_code(b)});
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) pts.push_back({f.one(), f.from_code(a), f.from_code(b)});
  }
  return pts;
}

std::vector<Point3> brute_force_singular_points(const SurfaceModel& model, const FieldPtr& field) {
  TernaryForm F = model.over(field);
  std::vector<TernaryForm> gs{F, F.partial(0), F.partial(1), F.partial(2)};
  std::vector<Point3> out;
  for (const auto& pt : projective_points(field)) {
    bool all = true;
    for (const auto& G : gs) {
      if (!field->is_zero(G.eval(pt))) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(pt);
  }
  return out;
}

}  // namespace k3rank
