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


#include "k3rank/divisors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "k3rank/error.hpp"

namespace k3rank {

namespace {

BinaryForm var_s(const FieldPtr& f) { return {UniPoly::constant(f, f->one()), 1}; }
BinaryForm var_t(const FieldPtr& f) { return {UniPoly::x(f), 1}; }
BinaryForm zero_form(const FieldPtr& f, int d) { return {UniPoly(f), d}; }
BinaryForm linear_form(const FieldPtr& f, const FElem& cs, const FElem& ct) {
  return {UniPoly(f, {cs, ct}), 1};
}

BinaryForm map_form(const BinaryForm& b, const Embedding& emb) { return {emb(b.poly), b.degree}; }

std::vector<std::uint64_t> form_key(const TernaryForm& f) {
  std::vector<std::uint64_t> key;
  key.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) key.push_back(f.ctx().code(c));
  return key;
}

bool same_modulus(const FieldCtx& a, const FieldCtx& b) {
  return a.characteristic() == b.characteristic() && a.modulus() == b.modulus();
}

FieldPtr extension_field(std::uint32_t p, std::uint32_t n, std::uint64_t limit) {
  FieldOptions opts;
  opts.cardinality_limit = limit;
  return FieldCtx::make(p, n, opts);
}

// Roots on P^1 over the coefficient field with multiplicities: (1 : r) for
// affine roots, (0 : 1) when the form vanishes at infinity.
struct ProjectiveRoot {
  FElem s, t;
  int multiplicity = 1;
};

std::vector<ProjectiveRoot> projective_roots(const BinaryForm& g, std::uint64_t seed) {
  const FieldCtx& f = g.ctx();
  std::vector<ProjectiveRoot> out;
  if (g.poly.degree() > 0) {
    for (const auto& fac : factorize(g.poly, seed).factors) {
      if (fac.poly.degree() != 1) fail(ErrorCode::kInternal, "form does not split in the root field");
      out.push_back({f.one(), f.neg(fac.poly.coeff(0)), fac.multiplicity});
    }
  }
  if (g.infinity_multiplicity() > 0) out.push_back({f.zero(), f.one(), g.infinity_multiplicity()});
  return out;
}

std::uint32_t lcm_u32(std::uint32_t a, std::uint32_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

Point3 ParamCurve::at(const FElem& s, const FElem& t) const {
  return {param[0].eval(s, t), param[1].eval(s, t), param[2].eval(s, t)};
}

ParamCurve::Preimage ParamCurve::invert(const Point3& p) const {
  const FieldCtx& f = *field;
  // phi(s, t) is proportional to p iff all 2x2 minors of (phi, p) vanish.
  std::vector<BinaryForm> minors;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      BinaryForm m = param[i].scaled(p[j]) - param[j].scaled(p[i]);
      if (!m.is_zero()) minors.push_back(std::move(m));
    }
  }
  if (minors.empty()) fail(ErrorCode::kInternal, "degenerate parametrization");
  UniPoly g = minors.front().poly;
  bool at_infinity = true;
  for (const auto& m : minors) {
    g = gcd(g, m.poly);
    if (m.infinity_multiplicity() == 0) at_infinity = false;
  }
  std::vector<std::pair<FElem, FElem>> cands;
  if (g.degree() > 0) {
    for (auto& r : roots(g)) cands.emplace_back(f.one(), r);
  }
  if (at_infinity) cands.emplace_back(f.zero(), f.one());
  if (cands.size() != 1) {
    fail(ErrorCode::kGeometry, "point " + point_to_string(f, p) + " has " + std::to_string(cands.size()) +
                                   " preimages on the parametrized curve");
  }
  auto [s, t] = cands.front();
  Point3 v = at(s, t);
  int i = 0;
  while (i < 3 && f.is_zero(p[i])) ++i;
  if (i == 3) fail(ErrorCode::kInvalidArgument, "zero point");
  FElem mu = f.div(v[i], p[i]);
  for (int j = 0; j < 3; ++j) {
    if (v[j] != f.mul(mu, p[j])) fail(ErrorCode::kGeometry, "point is not on the parametrized curve");
  }
  return {s, t, mu};
}

ParamCurve ParamCurve::mapped(const Embedding& emb) const {
  ParamCurve out;
  out.field = emb.dst();
  for (int i = 0; i < 3; ++i) out.param[i] = map_form(param[i], emb);
  out.plane = plane.mapped(emb);
  return out;
}

ParamCurve line_curve(const FieldPtr& field, const FElem& a, const FElem& b, const FElem& c) {
  const FieldCtx& f = *field;
  ParamCurve L;
  L.field = field;
  TernaryForm plane(field, 1);
  plane.set(1, 0, a);
  plane.set(0, 1, b);
  plane.set(0, 0, c);
  if (plane.is_zero()) fail(ErrorCode::kInvalidArgument, "zero line");
  L.plane = plane.normalized();
  if (!f.is_zero(c)) {
    L.param = {var_s(field), var_t(field), linear_form(field, f.neg(f.div(a, c)), f.neg(f.div(b, c)))};
  } else if (!f.is_zero(b)) {
    L.param = {var_s(field), linear_form(field, f.neg(f.div(a, b)), f.zero()), var_t(field)};
  } else {
    L.param = {zero_form(field, 1), var_s(field), var_t(field)};
  }
  return L;
}

ParamCurve conic_curve(const TernaryForm& q) {
  if (q.degree() != 2) fail(ErrorCode::kInvalidArgument, "conic must have degree 2");
  const FieldPtr& field = q.field();
  const FieldCtx& f = *field;
  // Discriminant of the symmetric matrix (p odd).
  const FElem a = q.coeff(2, 0), b = q.coeff(0, 2), c = q.coeff(0, 0);
  const FElem d = q.coeff(1, 1), e = q.coeff(1, 0), g = q.coeff(0, 1);
  const FElem two = f.from_int(2);
  const FElem A = f.mul(two, a), B = f.mul(two, b), C = f.mul(two, c);
  FElem det = f.sub(f.add(f.mul(A, f.sub(f.mul(B, C), f.mul(g, g))), f.mul(d, f.sub(f.mul(g, e), f.mul(d, C)))),
                    f.mul(e, f.sub(f.mul(B, e), f.mul(d, g))));
  if (f.is_zero(det)) fail(ErrorCode::kGeometry, "conic " + q.to_string() + " is singular");

  // First rational point: scan [1 : y : z] by y, then [0 : 1 : z], [0 : 0 : 1].
  std::optional<Point3> p0;
  for (std::uint64_t yc = 0; yc < f.size() && !p0; ++yc) {
    FElem y = f.from_code(yc);
    // q(1, y, z) = c z^2 + (e + g y) z + (a + d y + b y^2)
    UniPoly qz(field, {f.add(a, f.add(f.mul(d, y), f.mul(b, f.mul(y, y)))), f.add(e, f.mul(g, y)), c});
    if (qz.is_zero()) {
      p0 = Point3{f.one(), y, f.zero()};
    } else if (qz.degree() > 0) {
      auto rs = roots(qz);
      if (!rs.empty()) p0 = Point3{f.one(), y, rs.front()};
    }
  }
  if (!p0) {
    UniPoly qz(field, {b, g, c});
    if (qz.is_zero()) {
      p0 = Point3{f.zero(), f.one(), f.zero()};
    } else if (qz.degree() > 0) {
      auto rs = roots(qz);
      if (!rs.empty()) p0 = Point3{f.zero(), f.one(), rs.front()};
    }
  }
  if (!p0 && f.is_zero(c)) p0 = Point3{f.zero(), f.zero(), f.one()};
  if (!p0) fail(ErrorCode::kGeometry, "conic has no rational point");

  // Project from p0 onto a coordinate line missing it.
  const Point3& P = *p0;
  std::array<BinaryForm, 3> V;
  if (!f.is_zero(P[0])) {
    V = {zero_form(field, 1), var_s(field), var_t(field)};
  } else if (!f.is_zero(P[1])) {
    V = {var_s(field), zero_form(field, 1), var_t(field)};
  } else {
    V = {var_s(field), var_t(field), zero_form(field, 1)};
  }
  BinaryForm qv = q.compose(V[0], V[1], V[2]);
  BinaryForm bv = zero_form(field, 1);
  for (int i = 0; i < 3; ++i) bv = bv + V[i].scaled(q.partial(i).eval(P));
  ParamCurve out;
  out.field = field;
  out.plane = q.normalized();
  for (int i = 0; i < 3; ++i) {
    BinaryForm base{UniPoly::constant(field, P[i]), 0};
    out.param[i] = (qv * base) - (bv * V[i]);
  }
  if (!out.plane.compose(out.param[0], out.param[1], out.param[2]).is_zero()) {
    fail(ErrorCode::kInternal, "conic parametrization does not lie on the conic");
  }
  return out;
}

std::optional<SplitData> split_test(const BinaryForm& g) {
  if (g.is_zero() || g.degree % 2 != 0) return std::nullopt;
  if (g.infinity_multiplicity() % 2 != 0) return std::nullopt;
  const FieldPtr& field = g.poly.field();
  const FieldCtx& f = *field;
  UniPoly h = UniPoly::constant(field, f.one());
  FElem c = g.poly.lead();
  if (g.poly.degree() > 0) {
    auto sq = squarefree_decomposition(g.poly);
    for (const auto& part : sq.factors) {
      if (part.multiplicity % 2 != 0) return std::nullopt;
      for (int i = 0; i < part.multiplicity / 2; ++i) h = h * part.poly;
    }
    c = sq.unit;
  }
  auto s = f.sqrt(c);
  if (!s) return std::nullopt;
  return SplitData{BinaryForm(h, g.degree / 2), c, *s};
}

std::optional<SplitData> split_test(const UniPoly& g) {
  if (g.is_zero()) return std::nullopt;
  return split_test(BinaryForm(g, g.degree()));
}

namespace {

SplitCurve make_split_curve(const TernaryForm& F, ParamCurve base, const std::string& label) {
  SplitCurve sc;
  sc.g = F.compose(base.param[0], base.param[1], base.param[2]);
  auto split = split_test(sc.g);
  if (!split) fail(ErrorCode::kGeometry, "tangency violated: pullback of " + base.plane.to_string() + " does not split");
  sc.split = std::move(*split);
  const std::uint32_t n = base.field->degree();
  sc.field_degree = static_cast<int>(n);
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d == 0 && base.plane.frobenius(d) == base.plane) {
      sc.field_degree = static_cast<int>(d);
      break;
    }
  }
  sc.base = std::move(base);
  sc.label = label;
  return sc;
}

// Groups Frobenius-stable normalized curves into orbits: sorted by orbit
// size, then by the smallest key in the orbit; members in Frobenius order.
std::vector<std::vector<int>> frobenius_orbits(const std::vector<TernaryForm>& planes) {
  std::map<std::vector<std::uint64_t>, int> index;
  for (int i = 0; i < static_cast<int>(planes.size()); ++i) index[form_key(planes[i])] = i;
  std::vector<bool> seen(planes.size(), false);
  std::vector<std::pair<std::pair<std::size_t, std::vector<std::uint64_t>>, std::vector<int>>> orbits;
  for (const auto& [key, start] : index) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    int cur = start;
    do {
      orbit.push_back(cur);
      seen[cur] = true;
      auto it = index.find(form_key(planes[cur].frobenius()));
      if (it == index.end()) fail(ErrorCode::kInternal, "curve set is not closed under Frobenius");
      cur = it->second;
    } while (cur != start);
    orbits.push_back({{orbit.size(), key}, orbit});
  }
  std::sort(orbits.begin(), orbits.end());
  std::vector<std::vector<int>> out;
  for (auto& o : orbits) out.push_back(std::move(o.second));
  return out;
}

// chi(f6(1, t, alpha + beta t)) must be constant where nonzero on a split
// line. Scans alpha over a slice of log indices and returns survivors.
struct LineFilter {
  const LogTables* T = nullptr;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> t_logs;             // sample t values (kZero allowed)
  std::vector<std::vector<std::int8_t>> chi_of;  // [sample][log u or q-1 for zero]

  std::int8_t lookup(std::size_t j, std::uint32_t u) const {
    return chi_of[j][u == LogTables::kZero ? q - 1 : u];
  }

  bool passes(std::uint32_t la, std::uint32_t lb) const {
    int want = 0;
    for (std::size_t j = 0; j < t_logs.size(); ++j) {
      std::uint32_t u = T->add(la, T->mul(lb, t_logs[j]));
      int v = lookup(j, u);
      if (v == 0) continue;
      if (want == 0) {
        want = v;
      } else if (v != want) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

LineSearch find_split_lines(const SurfaceModel& model, unsigned k, unsigned workers) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "line search degree must be >= 1");
  LineSearch out;
  out.field = FieldCtx::make(model.p(), k, model.options());
  const FieldPtr& K = out.field;
  const FieldCtx& f = *K;
  const TernaryForm F = model.over(K);
  const std::uint64_t q = f.size();

  std::vector<TernaryForm> planes;
  std::vector<ParamCurve> curves;
  auto consider = [&](const FElem& a, const FElem& b, const FElem& c) {
    ParamCurve L = line_curve(K, a, b, c);
    BinaryForm g = F.compose(L.param[0], L.param[1], L.param[2]);
    if (split_test(g)) {
      planes.push_back(L.plane);
      curves.push_back(std::move(L));
    }
  };

  // z = alpha x + beta y, i.e. (-alpha) x + (-beta) y + z = 0.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> survivors;
  if (const LogTables* T = f.tables()) {
    LineFilter filter;
    filter.T = T;
    filter.q = static_cast<std::uint32_t>(q);
    const std::uint32_t samples = static_cast<std::uint32_t>(std::min<std::uint64_t>(q - 1, 16));
    std::vector<FElem> ts{f.zero()};
    for (std::uint32_t j = 0; j < samples; ++j) ts.push_back(f.from_log(j));
    for (const auto& t : ts) {
      filter.t_logs.push_back(f.to_log(t));
      // f6(1, t, u) as a polynomial in u.
      std::vector<FElem> cu(7, f.zero());
      for (int a = 0; a <= 6; ++a) {
        for (int b = 0; a + b <= 6; ++b) {
          int c = 6 - a - b;
          cu[c] = f.add(cu[c], f.mul(F.coeff(a, b), f.pow(t, static_cast<std::uint64_t>(b))));
        }
      }
      UniPoly pu(K, cu);
      std::vector<std::int8_t> row(q);
      for (std::uint32_t l = 0; l + 1 < q; ++l) row[l] = static_cast<std::int8_t>(f.chi(pu.eval(f.from_log(l))));
      row[q - 1] = static_cast<std::int8_t>(f.chi(pu.eval(f.zero())));
      filter.chi_of.push_back(std::move(row));
    }
    // Alpha index q-1 stands for zero; same for beta.
    auto to_log = [&](std::uint64_t i) { return i == q - 1 ? LogTables::kZero : static_cast<std::uint32_t>(i); };
    const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(q)));
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> found(nw);
    auto run = [&](unsigned w) {
      for (std::uint64_t ia = w; ia < q; ia += nw) {
        const std::uint32_t la = to_log(ia);
        for (std::uint64_t ib = 0; ib < q; ++ib) {
          if (filter.passes(la, to_log(ib))) found[w].emplace_back(ia, ib);
        }
      }
    };
    if (nw == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < nw; ++w) pool.emplace_back(run, w);
      for (auto& th : pool) th.join();
    }
    for (auto& v : found) survivors.insert(survivors.end(), v.begin(), v.end());
    std::sort(survivors.begin(), survivors.end());
    out.filter_survivors = survivors.size();
    for (auto [ia, ib] : survivors) {
      FElem alpha = ia == q - 1 ? f.zero() : f.from_log(static_cast<std::uint32_t>(ia));
      FElem beta = ib == q - 1 ? f.zero() : f.from_log(static_cast<std::uint32_t>(ib));
      consider(f.neg(alpha), f.neg(beta), f.one());
    }
  } else {
    for (std::uint64_t ia = 0; ia < q; ++ia) {
      for (std::uint64_t ib = 0; ib < q; ++ib) consider(f.from_code(ia), f.from_code(ib), f.one());
    }
    out.filter_survivors = q * q;
  }
  // y = alpha x, then x = 0.
  for (std::uint64_t ia = 0; ia < q; ++ia) consider(f.neg(f.from_code(ia)), f.one(), f.zero());
  consider(f.one(), f.zero(), f.zero());
  out.lines_scanned = q * q + q + 1;

  auto orbits = frobenius_orbits(planes);
  int next = 0;
  for (const auto& orbit : orbits) {
    std::vector<int> idx;
    for (int i : orbit) {
      idx.push_back(static_cast<int>(out.lines.size()));
      out.lines.push_back(make_split_curve(F, curves[i], "L" + std::to_string(next++)));
    }
    out.orbits.push_back(std::move(idx));
  }
  return out;
}

std::vector<ParamCurve> split_lines_exhaustive(const SurfaceModel& model, const FieldPtr& field) {
  const TernaryForm F = model.over(field);
  std::vector<ParamCurve> out;
  for (const auto& pt : projective_points(field)) {
    ParamCurve L = line_curve(field, pt[0], pt[1], pt[2]);
    if (split_test(F.compose(L.param[0], L.param[1], L.param[2]))) out.push_back(std::move(L));
  }
  return out;
}

namespace {

// Restriction of a ternary form to a coordinate line: var = 0, with the two
// remaining coordinates (in order) as (s, t).
BinaryForm restrict_to_axis(const TernaryForm& F, int var) {
  const FieldPtr& K = F.field();
  std::array<BinaryForm, 3> v;
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == var) {
      v[i] = zero_form(K, 1);
    } else {
      v[i] = slot++ == 0 ? var_s(K) : var_t(K);
    }
  }
  return F.compose(v[0], v[1], v[2]);
}

// All quadratic divisors of a binary form, up to scalars, as monic-ish
// coefficient triples (s^2, st, t^2).
std::vector<std::array<FElem, 3>> quadratic_divisors(const BinaryForm& r, std::uint64_t seed) {
  const FieldPtr& K = r.poly.field();
  const FieldCtx& f = *K;
  std::vector<BinaryForm> linear, quadratic;
  for (int i = 0; i < r.infinity_multiplicity(); ++i) linear.push_back(var_s(K));
  if (r.poly.degree() > 0) {
    for (const auto& fac : factorize(r.poly, seed).factors) {
      for (int m = 0; m < fac.multiplicity; ++m) {
        if (fac.poly.degree() == 1) {
          linear.push_back({fac.poly, 1});
        } else if (fac.poly.degree() == 2) {
          quadratic.push_back({fac.poly, 2});
        }
      }
    }
  }
  for (std::size_t i = 0; i < linear.size(); ++i) {
    for (std::size_t j = i + 1; j < linear.size(); ++j) quadratic.push_back(linear[i] * linear[j]);
  }
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::array<FElem, 3>> out;
  for (const auto& qf : quadratic) {
    std::array<FElem, 3> c{qf.poly.coeff(0), qf.poly.coeff(1), qf.poly.coeff(2)};
    std::vector<std::uint64_t> key{f.code(c[0]), f.code(c[1]), f.code(c[2])};
    if (seen.insert(key).second) out.push_back(c);
  }
  return out;
}

// Null space of a 3x3 matrix over a field (row reduction).
std::vector<std::array<FElem, 3>> null_space3(const FieldCtx& f, std::array<std::array<FElem, 3>, 3> m) {
  std::array<int, 3> pivot_col{-1, -1, -1};
  int row = 0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int piv = -1;
    for (int r = row; r < 3; ++r) {
      if (!f.is_zero(m[r][col])) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    FElem inv = f.inv(m[row][col]);
    for (auto& x : m[row]) x = f.mul(x, inv);
    for (int r = 0; r < 3; ++r) {
      if (r == row || f.is_zero(m[r][col])) continue;
      FElem k = m[r][col];
      for (int c = 0; c < 3; ++c) m[r][c] = f.sub(m[r][c], f.mul(k, m[row][c]));
    }
    pivot_col[row++] = col;
  }
  std::vector<std::array<FElem, 3>> basis;
  for (int free = 0; free < 3; ++free) {
    bool is_pivot = false;
    for (int r = 0; r < row; ++r) is_pivot = is_pivot || pivot_col[r] == free;
    if (is_pivot) continue;
    std::array<FElem, 3> v{f.zero(), f.zero(), f.zero()};
    v[free] = f.one();
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = f.neg(m[r][free]);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

ConicSystem verify_conic_system(const SurfaceModel& model, const TernaryForm& f3, unsigned k, std::uint64_t seed) {
  if (f3.degree() != 3) fail(ErrorCode::kInvalidArgument, "auxiliary form must be a cubic");
  ConicSystem out;
  out.field = FieldCtx::make(model.p(), k, model.options());
  const FieldPtr& K = out.field;
  const FieldCtx& f = *K;
  const TernaryForm F6 = model.over(K);
  const TernaryForm g3 = f3.mapped(Embedding(f3.field(), K));
  const TernaryForm R = F6 - g3 * g3;
  if (R.is_zero()) fail(ErrorCode::kGeometry, "f6 - f3^2 vanishes identically");

  // Restrictions: z = 0 gives (a, d, b), y = 0 gives (a, e, c), x = 0 gives
  // (b, f, c) for a x^2 + b y^2 + c z^2 + d xy + e xz + f yz.
  std::array<std::vector<std::array<FElem, 3>>, 3> cands;
  for (int var = 0; var < 3; ++var) {
    BinaryForm r = restrict_to_axis(R, var);
    if (r.is_zero()) fail(ErrorCode::kGeometry, "f6 - f3^2 vanishes on a coordinate line");
    cands[var] = quadratic_divisors(r, seed);
  }
  const auto& U = cands[2];  // z = 0
  const auto& V = cands[1];  // y = 0
  const auto& W = cands[0];  // x = 0

  std::map<std::vector<std::uint64_t>, TernaryForm> divisors;
  for (const auto& u : U) {
    for (const auto& v : V) {
      for (const auto& w : W) {
        // lambda u0 = mu v0, lambda u2 = nu w0, mu v2 = nu w2.
        std::array<std::array<FElem, 3>, 3> m{{{u[0], f.neg(v[0]), f.zero()},
                                               {u[2], f.zero(), f.neg(w[0])},
                                               {f.zero(), v[2], f.neg(w[2])}}};
        for (const auto& sol : null_space3(f, m)) {
          const FElem &lam = sol[0], &mu = sol[1], &nu = sol[2];
          TernaryForm Q(K, 2);
          Q.set(2, 0, f.mul(lam, u[0]));
          Q.set(0, 2, f.mul(lam, u[2]));
          Q.set(0, 0, f.mul(mu, v[2]));
          Q.set(1, 1, f.mul(lam, u[1]));
          Q.set(1, 0, f.mul(mu, v[1]));
          Q.set(0, 1, f.mul(nu, w[1]));
          if (Q.is_zero()) continue;
          Q = Q.normalized();
          auto key = form_key(Q);
          if (divisors.count(key)) continue;
          if (R.exact_div(Q)) divisors.emplace(key, Q);
        }
      }
    }
  }
  if (divisors.size() != 3) {
    fail(ErrorCode::kGeometry, "no factorization: expected 3 conic factors of f6 - f3^2, found " +
                                   std::to_string(divisors.size()));
  }
  std::vector<TernaryForm> qs;
  for (auto& [key, Q] : divisors) qs.push_back(Q);
  auto prod = qs[0] * qs[1] * qs[2];
  auto quot = R.exact_div(prod);
  if (!quot || quot->degree() != 0) {
    fail(ErrorCode::kGeometry, "no factorization: conic factors do not multiply to f6 - f3^2");
  }
  out.scale = quot->coeffs()[0];

  auto orbits = frobenius_orbits(qs);
  std::vector<TernaryForm> ordered;
  for (const auto& o : orbits) {
    for (int i : o) ordered.push_back(qs[i]);
  }
  if (orbits.size() != 1) fail(ErrorCode::kGeometry, "no factorization: conic factors are not Galois conjugate");
  out.conics = ordered;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    out.curves.push_back(make_split_curve(F6, conic_curve(ordered[i]), "Q" + std::to_string(i + 1)));
  }
  return out;
}

SplitSystem::SplitSystem(const SurfaceModel& model, const std::vector<std::vector<SplitCurve>>& families,
                         const SystemOptions& options)
    : p_(model.p()), options_(options) {
  std::uint32_t n = 1;
  FieldPtr first;
  for (const auto& fam : families) {
    if (fam.empty()) continue;
    n = lcm_u32(n, fam.front().base.field->degree());
    if (!first) first = fam.front().base.field;
  }
  if (first && first->degree() == n) {
    omega_ = first;
  } else {
    omega_ = extension_field(p_, n, options_.extension_limit);
  }
  for (const auto& fam : families) {
    if (fam.empty()) continue;
    const FieldPtr& src = fam.front().base.field;
    if (same_modulus(*src, *omega_)) {
      for (const auto& c : fam) curves_.push_back(c);
      continue;
    }
    Embedding emb(src, omega_);
    for (const auto& c : fam) {
      SplitCurve m;
      m.base = c.base.mapped(emb);
      m.g = map_form(c.g, emb);
      m.split = {map_form(c.split.h, emb), emb(c.split.c), emb(c.split.s)};
      m.field_degree = c.field_degree;
      m.label = c.label;
      curves_.push_back(std::move(m));
    }
  }
}

std::vector<DivisorClass> SplitSystem::generators() const {
  std::vector<DivisorClass> g{{-1, 0}};
  for (int i = 0; i < static_cast<int>(curves_.size()); ++i) {
    g.push_back({i, 1});
    g.push_back({i, -1});
  }
  return g;
}

std::string SplitSystem::label(const DivisorClass& d) const {
  if (d.is_h()) return "H";
  return curves_.at(d.curve).label + (d.sign > 0 ? "+" : "-");
}

const SplitSystem::Counts& SplitSystem::pair_counts(int i, int j) {
  auto it = pair_cache_.find({i, j});
  if (it != pair_cache_.end()) return it->second;
  const SplitCurve& A = curves_.at(i);
  const SplitCurve& B = curves_.at(j);
  BinaryForm G = B.base.plane.compose(A.base.param[0], A.base.param[1], A.base.param[2]);
  if (G.is_zero()) fail(ErrorCode::kGeometry, A.label + " and " + B.label + " share a component");
  std::uint32_t m = 1;
  if (G.poly.degree() > 0) {
    for (const auto& fac : factorize(G.poly, options_.seed).factors) {
      m = lcm_u32(m, static_cast<std::uint32_t>(fac.poly.degree()));
    }
  }
  FieldPtr E = omega_;
  std::optional<Embedding> emb;
  if (m > 1) {
    E = extension_field(p_, omega_->degree() * m, options_.extension_limit);
    emb.emplace(omega_, E);
  }
  const FieldCtx& f = *E;
  auto lift_curve = [&](const SplitCurve& c) { return emb ? c.base.mapped(*emb) : c.base; };
  auto lift_form = [&](const BinaryForm& b) { return emb ? map_form(b, *emb) : b; };
  auto lift = [&](const FElem& x) { return emb ? (*emb)(x) : x; };
  ParamCurve a = lift_curve(A), b = lift_curve(B);
  BinaryForm ha = lift_form(A.split.h), hb = lift_form(B.split.h);
  FElem sa = lift(A.split.s), sb = lift(B.split.s);

  Counts counts{};
  // Off the branch curve the cover is a local isomorphism, so a point of
  // contact order m between the bases contributes m on the matching sheets.
  for (const auto& [s, t, mult] : projective_roots(lift_form(G), options_.seed)) {
    Point3 P = a.at(s, t);
    FElem wa = f.mul(sa, ha.eval(s, t));
    if (mult > 1 && f.is_zero(wa)) {
      fail(ErrorCode::kGeometry, A.label + " and " + B.label + " are tangent on the branch curve");
    }
    auto pre = b.invert(P);
    FElem mu3 = f.mul(pre.mu, f.mul(pre.mu, pre.mu));
    FElem wb = f.div(f.mul(sb, hb.eval(pre.s, pre.t)), mu3);
    for (int ea = 0; ea < 2; ++ea) {
      for (int eb = 0; eb < 2; ++eb) {
        FElem va = ea == 0 ? wa : f.neg(wa);
        FElem vb = eb == 0 ? wb : f.neg(wb);
        if (va == vb) counts[ea][eb] += mult;
      }
    }
  }
  return pair_cache_.emplace(std::make_pair(i, j), counts).first->second;
}

int SplitSystem::intersection(const DivisorClass& a, const DivisorClass& b) {
  if (a.is_h() && b.is_h()) return 2;
  if (a.is_h()) return curves_.at(b.curve).base.degree();
  if (b.is_h()) return curves_.at(a.curve).base.degree();
  if (a.curve == b.curve) {
    const BinaryForm& h = curves_[a.curve].split.h;
    int roots = h.distinct_root_count();
    if (roots != h.degree) {
      fail(ErrorCode::kGeometry, "tangency of " + curves_[a.curve].label + " with the branch curve is not simple");
    }
    return a.sign == b.sign ? -2 : roots;
  }
  if (a.curve < b.curve) return pair_counts(a.curve, b.curve)[a.sign > 0 ? 0 : 1][b.sign > 0 ? 0 : 1];
  return pair_counts(b.curve, a.curve)[b.sign > 0 ? 0 : 1][a.sign > 0 ? 0 : 1];
}

std::vector<std::vector<long long>> SplitSystem::gram(const std::vector<DivisorClass>& gens) {
  std::vector<std::vector<long long>> g(gens.size(), std::vector<long long>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) g[i][j] = g[j][i] = intersection(gens[i], gens[j]);
  }
  return g;
}

int SplitSystem::curve_index(const TernaryForm& plane) const {
  auto key = form_key(plane.normalized());
  for (int i = 0; i < static_cast<int>(curves_.size()); ++i) {
    if (curves_[i].base.plane.degree() == plane.degree() && form_key(curves_[i].base.plane) == key) return i;
  }
  return -1;
}

DivisorClass SplitSystem::frobenius(const DivisorClass& d) {
  if (d.is_h()) return d;
  auto it = frob_cache_.find(d);
  if (it != frob_cache_.end()) return it->second;
  const SplitCurve& A = curves_.at(d.curve);
  int j = curve_index(A.base.plane.frobenius());
  if (j < 0) fail(ErrorCode::kGeometry, "Frobenius image of " + A.label + " is not in the configuration");
  const SplitCurve& B = curves_[j];

  // A point of A off the branch curve, in a field with enough points.
  const int need = A.split.h.degree + 1;
  std::uint32_t m = 1;
  while (true) {
    mpz_class size;
    mpz_ui_pow_ui(size.get_mpz_t(), p_, omega_->degree() * m);
    if (size + 1 > need) break;
    ++m;
  }
  FieldPtr E = omega_;
  std::optional<Embedding> emb;
  if (m > 1) {
    E = extension_field(p_, omega_->degree() * m, options_.extension_limit);
    emb.emplace(omega_, E);
  }
  const FieldCtx& f = *E;
  ParamCurve a = emb ? A.base.mapped(*emb) : A.base;
  ParamCurve b = emb ? B.base.mapped(*emb) : B.base;
  BinaryForm ha = emb ? map_form(A.split.h, *emb) : A.split.h;
  BinaryForm hb = emb ? map_form(B.split.h, *emb) : B.split.h;
  FElem sa = emb ? (*emb)(A.split.s) : A.split.s;
  FElem sb = emb ? (*emb)(B.split.s) : B.split.s;

  std::optional<std::pair<FElem, FElem>> st;
  if (!f.is_zero(ha.eval(f.zero(), f.one()))) st.emplace(f.zero(), f.one());
  for (std::uint64_t c = 0; !st && c < f.size(); ++c) {
    FElem t = f.from_code(c);
    if (!f.is_zero(ha.eval(f.one(), t))) st.emplace(f.one(), t);
  }
  if (!st) fail(ErrorCode::kInternal, "no point off the branch curve");
  Point3 P = a.at(st->first, st->second);
  FElem w = f.mul(sa, ha.eval(st->first, st->second));
  if (d.sign < 0) w = f.neg(w);
  Point3 P1{f.frobenius(P[0]), f.frobenius(P[1]), f.frobenius(P[2])};
  FElem w1 = f.frobenius(w);
  auto pre = b.invert(P1);
  FElem mu3 = f.mul(pre.mu, f.mul(pre.mu, pre.mu));
  FElem v = f.div(f.mul(sb, hb.eval(pre.s, pre.t)), mu3);
  DivisorClass image{j, 0};
  if (w1 == v) {
    image.sign = 1;
  } else if (w1 == f.neg(v)) {
    image.sign = -1;
  } else {
    fail(ErrorCode::kInternal, "Frobenius image of " + label(d) + " lies on neither branch");
  }
  frob_cache_.emplace(d, image);
  return image;
}

std::vector<int> SplitSystem::frobenius_permutation() {
  auto gens = generators();
  std::vector<int> perm;
  for (const auto& g : gens) {
    auto img = frobenius(g);
    auto it = std::find(gens.begin(), gens.end(), img);
    perm.push_back(static_cast<int>(it - gens.begin()));
  }
  return perm;
}

void SplitSystem::check_invariants() {
  for (int i = 0; i < static_cast<int>(curves_.size()); ++i) {
    const int d = curves_[i].base.degree();
    DivisorClass p{i, 1}, m{i, -1};
    int total = intersection(p, p) + 2 * intersection(p, m) + intersection(m, m);
    if (total != 2 * d * d) {
      fail(ErrorCode::kGeometry, "pullback self-intersection of " + curves_[i].label + " is " +
                                     std::to_string(total) + ", expected " + std::to_string(2 * d * d));
    }
    for (int j = 0; j < static_cast<int>(curves_.size()); ++j) {
      if (j == i) continue;
      const int e = curves_[j].base.degree();
      for (int sa : {1, -1}) {
        int sum = intersection({i, sa}, {j, 1}) + intersection({i, sa}, {j, -1});
        if (sum != d * e) {
          fail(ErrorCode::kGeometry, "branch sum " + curves_[i].label + " . " + curves_[j].label + " is " +
                                         std::to_string(sum) + ", expected " + std::to_string(d * e));
        }
      }
    }
  }
}

}  // namespace k3rank
