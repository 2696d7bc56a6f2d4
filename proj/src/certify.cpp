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

#include "k3rank/certify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "k3rank/artintate.hpp"
#include "k3rank/divisors.hpp"
#include "k3rank/error.hpp"

namespace k3rank {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) fail(ErrorCode::kParse, "bad " + what + " '" + s + "'");
  return v;
}

mpz_class parse_mpz(const std::string& s, const std::string& what) {
  mpz_class v;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || v.set_str(t, 10) != 0) fail(ErrorCode::kParse, "bad " + what + " '" + s + "'");
  return v;
}

template <typename T>
std::string join(const std::vector<T>& v, const std::string& sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string join_mpz(const std::vector<mpz_class>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return join(s);
}

unsigned lcm_of(const std::vector<unsigned>& v) {
  unsigned k = 1;
  for (unsigned n : v) k = std::lcm(k, n);
  return k;
}

// Multiplicity of each Tate factor (by cyclotomic index) in a product of
// Tate factors.
std::map<unsigned, int> tate_multiplicities(ZPoly poly, const TateDecomposition& tate) {
  std::map<unsigned, int> out;
  for (const auto& f : tate.factors) {
    int m = 0;
    while (poly.degree() >= f.degree()) {
      auto q = exact_div(poly, f.poly);
      if (!q) break;
      poly = *q;
      ++m;
    }
    if (m) out[f.n] = m;
  }
  return out;
}

// A hypothetical module N together with the explicit module M spans at
// least sum_n max(mult_N, mult_M) phi(n) dimensions of V_Tate; equality with
// the Tate dimension makes the Tate conjecture hold for the reduction.
bool saturates(const AdmissibleCandidate& n, const ZPoly& module_charpoly, const TateDecomposition& tate,
               std::string* evidence) {
  std::map<unsigned, int> mn;
  for (unsigned i : n.indices) ++mn[i];
  auto mm = tate_multiplicities(module_charpoly, tate);
  int span = 0;
  std::ostringstream ev;
  for (const auto& f : tate.factors) {
    int a = mn.count(f.n) ? mn[f.n] : 0;
    int b = mm.count(f.n) ? mm[f.n] : 0;
    span += std::max(a, b) * f.degree();
    ev << (ev.tellp() > 0 ? ", " : "") << "Phi_" << f.n << ": N " << a << " M " << b;
  }
  if (evidence) {
    *evidence = "span(N + M) >= " + std::to_string(span) + " of " + std::to_string(tate.tate_dimension) + " (" +
                ev.str() + ")";
  }
  return span == tate.tate_dimension;
}

const AdmissibleCandidate* find_candidate(const AdmissibleDims& adm, int dim, const ZPoly& charpoly) {
  for (const auto* c : adm.of_dimension(dim)) {
    if (c->charpoly == charpoly) return c;
  }
  return nullptr;
}

std::vector<std::vector<int>> perm_orbits(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
    if (seen[i]) continue;
    std::vector<int> o;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      o.push_back(j);
    }
    std::sort(o.begin(), o.end());
    out.push_back(o);
  }
  return out;
}

// perm restricted to a Frobenius-stable index set, reindexed.
std::vector<int> restrict_perm(const std::vector<int>& perm, const std::vector<int>& idx) {
  std::vector<int> out;
  for (int i : idx) {
    auto it = std::find(idx.begin(), idx.end(), perm.at(i));
    if (it == idx.end()) fail(ErrorCode::kInvalidArgument, "generator set is not Frobenius-stable");
    out.push_back(static_cast<int>(it - idx.begin()));
  }
  return out;
}

Error staged(const std::string& stage, std::uint32_t p, const Error& e) {
  return Error(e.code(), "p=" + std::to_string(p) + " " + stage + ": " + e.what());
}

constexpr std::size_t kMaxOrbitSubsets = std::size_t{1} << 12;
constexpr unsigned kMaxAtExtension = 5000;

void add_lattice_classes(PrimeAnalysis& a) {
  const auto& inv = a.divisors;
  auto orbits = perm_orbits(inv.frobenius);
  std::vector<std::vector<int>> others;
  for (const auto& o : orbits) {
    if (o != std::vector<int>{0}) others.push_back(o);
  }
  if (others.size() > 20 || (std::size_t{1} << others.size()) > kMaxOrbitSubsets) {
    a.notes.push_back("lattice: " + std::to_string(others.size()) + " Frobenius orbits, only the full span is used");
    others.clear();
  }
  std::vector<std::vector<int>> sets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
    std::vector<int> idx{0};
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (mask >> b & 1) idx.insert(idx.end(), others[b].begin(), others[b].end());
    }
    std::sort(idx.begin(), idx.end());
    sets.push_back(idx);
  }
  if (others.empty() && inv.labels.size() > 1) {
    std::vector<int> all(inv.labels.size());
    std::iota(all.begin(), all.end(), 0);
    sets.push_back(all);
  }
  std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::map<int, ClassRecord> by_dim;
  const mpz_class q = a.p;
  for (const auto& idx : sets) {
    ZMatrix sub = submatrix(inv.gram, idx);
    LatticeInfo info;
    try {
      info = analyze_gram(sub);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerate) continue;
      throw;
    }
    ZPoly cp = frobenius_charpoly(sub, restrict_perm(inv.frobenius, idx), q);
    const AdmissibleCandidate* cand = find_candidate(a.admissible, info.rank, cp);
    if (!cand) continue;
    ClassRecord r;
    r.dim = info.rank;
    r.det = info.det;
    r.value = square_class(info.det);
    r.source = "lattice";
    r.conditional = false;
    r.generators = idx;
    std::vector<std::string> names;
    for (int i : idx) names.push_back(inv.labels[i]);
    r.justification = "explicit sublattice <" + join(names, ", ") + ">, rank " + std::to_string(info.rank) +
                      ", det " + info.det.get_str() + ", Frobenius charpoly " + cp.to_string();
    auto it = by_dim.find(r.dim);
    if (it == by_dim.end()) {
      by_dim.emplace(r.dim, r);
      a.classes.push_back(r);
    } else if (it->second.value != r.value) {
      fail(ErrorCode::kInconsistent, "explicit sublattices of rank " + std::to_string(r.dim) +
                                         " have different square classes " + it->second.value.get_str() + " and " +
                                         r.value.get_str());
    }
  }
}

void add_artin_tate_classes(PrimeAnalysis& a) {
  const mpz_class q = a.p;
  for (int d : a.admissible.dims) {
    for (const auto* cand : a.admissible.of_dimension(d)) {
      unsigned k = lcm_of(cand->indices);
      if (k > kMaxAtExtension) {
        a.notes.push_back("dim " + std::to_string(d) + ": Artin-Tate skipped, extension degree " +
                          std::to_string(k) + " too large");
        continue;
      }
      WeilPolynomial b = base_change(a.weil, k);
      int mult = root_multiplicity(b.poly(), b.q);
      if (mult != d) {
        a.notes.push_back("dim " + std::to_string(d) + ": Artin-Tate not applicable, mult(t - q^" +
                          std::to_string(k) + ") = " + std::to_string(mult));
        continue;
      }
      std::string evidence;
      bool sat = saturates(*cand, a.divisors.charpoly, a.tate, &evidence);
      ATResult at = disc_class(a.weil, k, d, !sat);
      ClassRecord r;
      r.dim = d;
      r.value = at.disc_class;
      r.source = "artin-tate";
      r.conditional = at.conditional;
      r.subset = cand->subset;
      r.k = k;
      r.limit = at.limit;
      r.trail = at.exponent_trail();
      r.justification = "candidate " + cand->charpoly.to_string() + " over F_" + std::to_string(a.p) + "^" +
                        std::to_string(k) + "; " + evidence +
                        (sat ? "; saturates V_Tate, Tate conjecture holds for this reduction"
                             : "; Tate conjecture not certified");
      a.classes.push_back(std::move(r));
    }
  }
}

}  // namespace

std::map<std::uint32_t, DivisorConfig> parse_divisor_config(const std::string& text, const std::string& base_dir) {
  std::map<std::uint32_t, DivisorConfig> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string where = "divisor config line " + std::to_string(lineno) + ": ";
    if (tok.size() < 3) fail(ErrorCode::kParse, where + "expected 'p lines k' or 'p conics k file'");
    long p = parse_long(tok[0], "prime");
    long k = parse_long(tok[2], "extension degree");
    if (p < 3 || k < 1) fail(ErrorCode::kParse, where + "prime must be odd and degree >= 1");
    auto& cfg = out[static_cast<std::uint32_t>(p)];
    if (tok[1] == "lines" && tok.size() == 3) {
      cfg.line_degrees.push_back(static_cast<unsigned>(k));
    } else if (tok[1] == "conics" && tok.size() == 4) {
      std::filesystem::path path(tok[3]);
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      cfg.conics.push_back({read_file(path.string()), tok[3], static_cast<unsigned>(k)});
    } else {
      fail(ErrorCode::kParse, where + "unknown entry '" + tok[1] + "'");
    }
  }
  return out;
}

std::optional<ClassRecord> PrimeAnalysis::usable_class(int dim) const {
  for (const auto& c : classes) {
    if (c.dim == dim && c.source == "lattice") return c;
  }
  std::optional<ClassRecord> found;
  std::size_t n = 0;
  for (const auto& c : classes) {
    if (c.dim != dim || c.source != "artin-tate") continue;
    if (c.conditional) return std::nullopt;
    if (found && found->value != c.value) return std::nullopt;
    if (!found) found = c;
    ++n;
  }
  if (n != admissible.of_dimension(dim).size()) return std::nullopt;
  return found;
}

DivisorInventory build_inventory(const SurfaceModel& model, const DivisorConfig& config, const AnalysisOptions& options,
                                 std::vector<std::string>* notes) {
  const std::uint32_t p = model.p();
  std::vector<std::string> local;
  std::vector<std::string>& log = notes ? *notes : local;
  std::vector<std::vector<SplitCurve>> families;
  for (unsigned k : config.line_degrees) {
    auto r = find_split_lines(model, k, options.workers);
    log.push_back("lines over F_" + std::to_string(p) + "^" + std::to_string(k) + ": " +
                  std::to_string(r.lines.size()) + " split, " + std::to_string(r.filter_survivors) +
                  " passed the character filter");
    if (!r.lines.empty()) families.push_back(r.lines);
  }
  for (const auto& c : config.conics) {
    TernaryForm f3 = parse_plane_form(c.f3_text, 3, model.prime_field());
    auto cs = verify_conic_system(model, f3, c.degree, options.seed);
    log.push_back("conics from " + c.source + ": 3 conjugate factors over F_" + std::to_string(p) + "^" +
                  std::to_string(c.degree));
    families.push_back(cs.curves);
  }
  DivisorInventory inv;
  if (families.empty()) {
    inv.labels = {"H"};
    inv.gram = {{mpz_class(2)}};
    inv.frobenius = {0};
  } else {
    SystemOptions so;
    so.seed = options.seed;
    SplitSystem sys(model, families, so);
    sys.check_invariants();
    auto gens = sys.generators();
    for (const auto& g : gens) inv.labels.push_back(sys.label(g));
    for (const auto& c : sys.curves()) {
      inv.curves.push_back(c.label + ": " + c.base.plane.to_string() + " (field degree " +
                           std::to_string(c.field_degree) + ")");
    }
    inv.gram = to_zmatrix(sys.gram(gens));
    inv.frobenius = sys.frobenius_permutation();
  }
  inv.lattice = analyze_gram(inv.gram);
  inv.charpoly = frobenius_charpoly(inv.gram, inv.frobenius, mpz_class(p));
  return inv;
}

PrimeAnalysis analyze_prime(const SurfaceModel& model, const PrimeConfig& config, const AnalysisOptions& options) {
  PrimeAnalysis a;
  a.p = model.p();
  const mpz_class q = a.p;
  try {
    auto rep = good_reduction(model, options.seed);
    if (!rep.good) {
      std::string where = rep.witness ? rep.witness->description : std::string("unknown point");
      fail(ErrorCode::kBadReduction, "branch sextic is singular mod " + std::to_string(a.p) + " at " + where);
    }
  } catch (const Error& e) {
    throw staged("surface", a.p, e);
  }

  // Traces. n_max bounds the counting only; supplied entries beyond it are
  // kept as extra data.
  try {
    if (config.n_max < 1) fail(ErrorCode::kInvalidArgument, "n_max must be >= 1");
    std::vector<TraceEntry> supplied;
    if (config.traces) {
      if (config.traces->p != a.p) fail(ErrorCode::kInvalidArgument, "trace file is for another prime");
      for (std::uint32_t n = 1; const TraceEntry* e = config.traces->find(n); ++n) supplied.push_back(*e);
    }
    a.traces.p = a.p;
    if (supplied.size() >= config.n_max) {
      a.traces.entries = supplied;
    } else {
      CountOptions co;
      co.workers = options.workers;
      a.traces = trace_series(model, config.n_max, co, options.cache);
      for (const auto& e : config.traces ? config.traces->entries : std::vector<TraceEntry>{}) {
        const TraceEntry* c = a.traces.find(e.n);
        if (c && c->trace != e.trace) {
          fail(ErrorCode::kInconsistent, "supplied trace t_" + std::to_string(e.n) + " = " + e.trace.get_str() +
                                             " disagrees with the count " + c->trace.get_str());
        }
      }
    }
  } catch (const Error& e) {
    throw staged("counting", a.p, e);
  }

  try {
    a.divisors = build_inventory(model, config.divisors, options, &a.notes);
  } catch (const Error& e) {
    throw staged("divisors", a.p, e);
  }

  try {
    ReconstructReport rep;
    a.weil = reconstruct(a.traces.traces(), q, {a.divisors.charpoly}, &rep);
    a.weil_notes = rep.notes;
  } catch (const Error& e) {
    throw staged("weil", a.p, e);
  }
  if (!exact_div(a.weil.poly(), a.divisors.charpoly)) {
    throw Error(ErrorCode::kInconsistent,
                "p=" + std::to_string(a.p) + " divisors: explicit module charpoly does not divide Phi");
  }

  try {
    a.tate = tate_split(a.weil);
    a.admissible = admissible_dimensions(a.tate, {ZPoly::linear(q)});
  } catch (const Error& e) {
    throw staged("tate", a.p, e);
  }

  try {
    add_lattice_classes(a);
    add_artin_tate_classes(a);
    for (int d : a.admissible.dims) {
      std::optional<mpz_class> seen;
      for (const auto& c : a.classes) {
        if (c.dim != d || c.conditional) continue;
        if (seen && *seen != c.value) {
          fail(ErrorCode::kInconsistent, "unconditional classes for dim " + std::to_string(d) + " disagree: " +
                                             seen->get_str() + " vs " + c.value.get_str());
        }
        seen = c.value;
      }
    }
  } catch (const Error& e) {
    throw staged("classes", a.p, e);
  }
  return a;
}

Certificate decide(const SexticForm& surface, const PrimeAnalysis& a, const PrimeAnalysis& b) {
  Certificate c;
  c.surface = surface;
  c.primes = {a, b};
  std::set_intersection(a.admissible.dims.begin(), a.admissible.dims.end(), b.admissible.dims.begin(),
                        b.admissible.dims.end(), std::inserter(c.intersection, c.intersection.begin()));
  if (!c.intersection.count(1)) c.gaps.push_back("dimension 1 is not admissible at both primes");
  for (int d : c.intersection) {
    if (d == 1) continue;
    auto ca = a.usable_class(d);
    auto cb = b.usable_class(d);
    const std::string dn = "dim " + std::to_string(d) + ": ";
    if (!ca || !cb) {
      std::vector<std::string> missing;
      for (const auto* x : {&a, &b}) {
        if (!x->usable_class(d)) missing.push_back("p=" + std::to_string(x->p));
      }
      c.gaps.push_back(dn + "no unconditional discriminant class at " + join(missing, " and "));
      continue;
    }
    if (classes_equal(ca->value, cb->value)) {
      c.gaps.push_back(dn + "classes agree (" + ca->value.get_str() + ")");
      continue;
    }
    std::uint64_t w = witness_prime(ca->value, cb->value);
    if (w == 0) {
      c.gaps.push_back(dn + "no witness prime below the search bound");
      continue;
    }
    c.exclusions.push_back({d, ca->value, cb->value, w});
  }
  c.proven = c.gaps.empty();
  return c;
}

std::string Certificate::conclusion() const {
  if (proven) return "rank 1 proven";
  return "inconclusive: " + join(gaps, "; ");
}

DegreeBound split_degree_bound(const mpz_class& disc) {
  if (disc == 0) fail(ErrorCode::kInvalidArgument, "degree bound needs a nonzero discriminant");
  // Only |disc| matters: with C^2 = -2 the condition reads d^2 >= |disc| - 4.
  const mpz_class D = abs(disc);
  DegreeBound b;
  mpz_class d = 1;
  while (d * d < D - 4) ++d;
  b.d_min = static_cast<int>(d.get_si());
  mpz_class num = d * d + D;
  mpz_cdiv_q_ui(b.genus_drop.get_mpz_t(), num.get_mpz_t(), 4);
  return b;
}

// Serialization.

namespace {

struct Block {
  std::string name;
  std::vector<std::pair<std::string, std::string>> kv;

  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  std::vector<std::string> all(const std::string& k) const {
    std::vector<std::string> out;
    for (const auto& [key, v] : kv) {
      if (key == k) out.push_back(v);
    }
    return out;
  }
  std::string one(const std::string& k) const {
    auto v = all(k);
    if (v.size() != 1) fail(ErrorCode::kParse, "[" + name + "] needs exactly one '" + k + "'");
    return v[0];
  }
  std::optional<std::string> maybe(const std::string& k) const {
    auto v = all(k);
    if (v.empty()) return std::nullopt;
    return v[0];
  }
};

std::string render(const std::vector<Block>& blocks) {
  std::ostringstream os;
  os << "k3rank-certificate: " << kCertificateVersion << "\n";
  for (const auto& b : blocks) {
    os << "\n[" << b.name << "]\n";
    for (const auto& [k, v] : b.kv) os << k << ": " << v << "\n";
  }
  return os.str();
}

std::vector<Block> parse_blocks(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "empty certificate");
  if (line.rfind("k3rank-certificate: ", 0) != 0) fail(ErrorCode::kParse, "missing certificate header");
  if (line != "k3rank-certificate: " + std::to_string(kCertificateVersion)) {
    fail(ErrorCode::kParse, "unsupported certificate version '" + line.substr(20) + "'");
  }
  std::vector<Block> blocks;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": bad block header");
      blocks.push_back({line.substr(1, line.size() - 2), {}});
      continue;
    }
    auto colon = line.find(": ");
    if (colon == std::string::npos || blocks.empty()) {
      fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected 'key: value'");
    }
    blocks.back().add(line.substr(0, colon), line.substr(colon + 2));
  }
  return blocks;
}

std::vector<Block> prime_blocks(const PrimeAnalysis& a) {
  Block b{"prime", {}};
  b.add("p", std::to_string(a.p));
  for (const auto& e : a.traces.entries) b.add("trace", std::to_string(e.n) + " " + e.trace.get_str());
  b.add("weil.epsilon", std::to_string(a.weil.epsilon));
  b.add("weil.coefficients", join_mpz(a.weil.a));
  for (const auto& n : a.weil_notes) b.add("weil.note", n);
  b.add("tate.dimension", std::to_string(a.tate.tate_dimension));
  for (const auto& f : a.tate.factors) b.add("tate.factor", std::to_string(f.n) + " " + std::to_string(f.multiplicity));
  b.add("tate.remainder", a.tate.remainder.to_coeff_list());
  std::vector<unsigned> free;
  for (const auto& f : a.admissible.free_factors) free.push_back(f.n);
  b.add("admissible.free", join(free));
  b.add("admissible.dims", join(std::vector<int>(a.admissible.dims.begin(), a.admissible.dims.end())));
  const auto& inv = a.divisors;
  b.add("divisors.generators", join(inv.labels));
  for (const auto& c : inv.curves) b.add("divisors.curve", c);
  for (const auto& row : inv.gram) b.add("divisors.gram", join_mpz(row));
  b.add("divisors.frobenius", join(inv.frobenius));
  b.add("divisors.rank", std::to_string(inv.lattice.rank));
  b.add("divisors.det", inv.lattice.det.get_str());
  b.add("divisors.charpoly", inv.charpoly.to_coeff_list());
  for (const auto& n : a.notes) b.add("note", n);
  std::vector<Block> out{b};
  for (const auto& c : a.classes) {
    Block cb{"class", {}};
    cb.add("p", std::to_string(a.p));
    cb.add("dim", std::to_string(c.dim));
    cb.add("value", c.value.get_str());
    cb.add("source", c.source);
    cb.add("conditional", c.conditional ? "true" : "false");
    if (c.source == "lattice") {
      cb.add("generators", join(c.generators));
      cb.add("det", c.det.get_str());
    } else {
      cb.add("subset", join(c.subset));
      cb.add("k", std::to_string(c.k));
      cb.add("limit", c.limit.get_str());
      cb.add("trail", c.trail);
    }
    cb.add("justification", c.justification);
    out.push_back(cb);
  }
  return out;
}

std::vector<mpz_class> mpz_list(const std::string& s, const std::string& what) {
  std::vector<mpz_class> out;
  for (const auto& t : split_ws(s)) out.push_back(parse_mpz(t, what));
  return out;
}

template <typename T>
std::vector<T> int_list(const std::string& s, const std::string& what) {
  std::vector<T> out;
  for (const auto& t : split_ws(s)) out.push_back(static_cast<T>(parse_long(t, what)));
  return out;
}

// Rebuilds the parts of a PrimeAnalysis that the certificate carries.
// Derived data (Tate split, admissible dims, lattice info) are recomputed
// and compared by the verifier, not trusted.
struct ParsedPrime {
  PrimeAnalysis a;
  Block block;
  int recorded_tate_dimension = 0;
  std::vector<std::pair<unsigned, int>> recorded_factors;
  ZPoly recorded_remainder;
  std::vector<unsigned> recorded_free;
  std::set<int> recorded_dims;
  int recorded_rank = 0;
  mpz_class recorded_det;
};

ParsedPrime parse_prime(const Block& b) {
  ParsedPrime pp;
  pp.block = b;
  PrimeAnalysis& a = pp.a;
  long p = parse_long(b.one("p"), "prime");
  if (p < 3) fail(ErrorCode::kParse, "bad prime");
  a.p = static_cast<std::uint32_t>(p);
  a.traces.p = a.p;
  for (const auto& t : b.all("trace")) {
    auto tok = split_ws(t);
    if (tok.size() != 2) fail(ErrorCode::kParse, "bad trace line '" + t + "'");
    TraceEntry e;
    e.n = static_cast<std::uint32_t>(parse_long(tok[0], "trace index"));
    e.trace = parse_mpz(tok[1], "trace");
    e.count = count_from_trace(a.p, e.n, e.trace);
    a.traces.entries.push_back(e);
  }
  a.weil.q = a.p;
  a.weil.epsilon = static_cast<int>(parse_long(b.one("weil.epsilon"), "epsilon"));
  a.weil.a = mpz_list(b.one("weil.coefficients"), "Weil coefficient");
  a.weil_notes = b.all("weil.note");
  pp.recorded_tate_dimension = static_cast<int>(parse_long(b.one("tate.dimension"), "Tate dimension"));
  for (const auto& f : b.all("tate.factor")) {
    auto v = int_list<long>(f, "Tate factor");
    if (v.size() != 2) fail(ErrorCode::kParse, "bad Tate factor line");
    pp.recorded_factors.emplace_back(static_cast<unsigned>(v[0]), static_cast<int>(v[1]));
  }
  pp.recorded_remainder = parse_coeff_list(b.one("tate.remainder"));
  pp.recorded_free = int_list<unsigned>(b.one("admissible.free"), "factor index");
  for (int d : int_list<int>(b.one("admissible.dims"), "dimension")) pp.recorded_dims.insert(d);
  auto& inv = a.divisors;
  inv.labels = split_ws(b.one("divisors.generators"));
  inv.curves = b.all("divisors.curve");
  for (const auto& row : b.all("divisors.gram")) inv.gram.push_back(mpz_list(row, "Gram entry"));
  inv.frobenius = int_list<int>(b.one("divisors.frobenius"), "permutation entry");
  pp.recorded_rank = static_cast<int>(parse_long(b.one("divisors.rank"), "rank"));
  pp.recorded_det = parse_mpz(b.one("divisors.det"), "determinant");
  inv.charpoly = parse_coeff_list(b.one("divisors.charpoly"));
  a.notes = b.all("note");
  return pp;
}

ClassRecord parse_class(const Block& b) {
  ClassRecord c;
  c.dim = static_cast<int>(parse_long(b.one("dim"), "dimension"));
  c.value = parse_mpz(b.one("value"), "class");
  c.source = b.one("source");
  std::string cond = b.one("conditional");
  if (cond != "true" && cond != "false") fail(ErrorCode::kParse, "conditional must be true or false");
  c.conditional = cond == "true";
  c.justification = b.one("justification");
  if (c.source == "lattice") {
    c.generators = int_list<int>(b.one("generators"), "generator index");
    c.det = parse_mpz(b.one("det"), "determinant");
  } else if (c.source == "artin-tate") {
    c.subset = int_list<std::size_t>(b.one("subset"), "subset index");
    c.k = static_cast<unsigned>(parse_long(b.one("k"), "extension degree"));
    c.limit = parse_mpz(b.one("limit"), "limit");
    c.trail = b.one("trail");
  } else {
    fail(ErrorCode::kParse, "unknown class source '" + c.source + "'");
  }
  return c;
}

[[noreturn]] void reject(const std::string& check) { fail(ErrorCode::kVerification, "check failed: " + check); }

void verify_prime(ParsedPrime& pp, std::vector<std::string>& log) {
  PrimeAnalysis& a = pp.a;
  const std::string P = "p=" + std::to_string(a.p) + " ";
  const mpz_class q = a.p;
  try {
    a.weil = WeilPolynomial::make(q, a.weil.a, a.weil.epsilon);
  } catch (const Error& e) {
    reject(P + "Weil polynomial invariants (" + e.what() + ")");
  }
  log.push_back(P + "Weil polynomial: monic, functional equation, Phi(q) = 0");
  std::vector<mpz_class> tr = a.traces.traces();
  for (std::size_t i = 0; i < a.traces.entries.size(); ++i) {
    if (a.traces.entries[i].n != i + 1) reject(P + "traces are numbered 1..n");
  }
  if (tr.empty()) reject(P + "at least one trace");
  auto ps = power_sums(a.weil, tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (ps[i] != tr[i]) reject(P + "power sum " + std::to_string(i + 1) + " of Phi equals trace " + tr[i].get_str());
    if (!within_weil_bound(a.p, static_cast<std::uint32_t>(i + 1), tr[i])) reject(P + "trace within Weil bound");
  }
  log.push_back(P + "power sums of Phi reproduce " + std::to_string(tr.size()) + " traces");
  if (!roots_on_weil_circle(a.weil.poly(), q, a.weil.epsilon)) reject(P + "roots of Phi on |t| = q");
  log.push_back(P + "roots of Phi on the Weil circle");

  a.tate = tate_split(a.weil);
  std::vector<std::pair<unsigned, int>> fac;
  for (const auto& f : a.tate.factors) fac.emplace_back(f.n, f.multiplicity);
  if (fac != pp.recorded_factors || a.tate.remainder != pp.recorded_remainder ||
      a.tate.tate_dimension != pp.recorded_tate_dimension) {
    reject(P + "Tate decomposition");
  }
  if (!(a.tate.reassemble() == a.weil.poly())) reject(P + "Tate factors reassemble Phi");
  log.push_back(P + "Tate part of dimension " + std::to_string(a.tate.tate_dimension));
  a.admissible = admissible_dimensions(a.tate, {ZPoly::linear(q)});
  std::vector<unsigned> free;
  for (const auto& f : a.admissible.free_factors) free.push_back(f.n);
  if (free != pp.recorded_free || a.admissible.dims != pp.recorded_dims) reject(P + "admissible dimensions");
  log.push_back(P + "admissible dimensions " + join(std::vector<int>(a.admissible.dims.begin(),
                                                                      a.admissible.dims.end())));

  auto& inv = a.divisors;
  const std::size_t n = inv.labels.size();
  if (n == 0 || inv.labels[0] != "H" || inv.gram.size() != n || inv.frobenius.size() != n) {
    reject(P + "divisor inventory shape");
  }
  for (const auto& row : inv.gram) {
    if (row.size() != n) reject(P + "Gram matrix is square");
  }
  std::vector<int> sorted = inv.frobenius;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted[i] != static_cast<int>(i)) reject(P + "Frobenius is a permutation");
  }
  if (inv.frobenius[0] != 0 || inv.gram[0][0] != 2) reject(P + "H is Frobenius-fixed with H^2 = 2");
  try {
    inv.lattice = analyze_gram(inv.gram);
  } catch (const Error& e) {
    reject(P + "Gram matrix (" + std::string(e.what()) + ")");
  }
  if (inv.lattice.rank != pp.recorded_rank || inv.lattice.det != pp.recorded_det) reject(P + "lattice rank and det");
  ZPoly cp;
  try {
    cp = frobenius_charpoly(inv.gram, inv.frobenius, q);
  } catch (const Error& e) {
    reject(P + "Frobenius action (" + std::string(e.what()) + ")");
  }
  if (!(cp == inv.charpoly)) reject(P + "explicit module charpoly");
  if (!exact_div(a.weil.poly(), cp)) reject(P + "explicit module charpoly divides Phi");
  log.push_back(P + "explicit lattice rank " + std::to_string(inv.lattice.rank) + ", det " +
                inv.lattice.det.get_str() + ", charpoly divides Phi");

  for (const auto& c : a.classes) {
    const std::string C = P + "class dim " + std::to_string(c.dim) + " (" + c.source + ")";
    if (!a.admissible.dims.count(c.dim)) reject(C + ": dimension is admissible");
    if (c.source == "lattice") {
      if (c.conditional) reject(C + ": lattice classes are unconditional");
      for (int g : c.generators) {
        if (g < 0 || g >= static_cast<int>(n)) reject(C + ": generator index");
      }
      if (c.generators.empty() || c.generators[0] != 0) reject(C + ": sublattice contains H");
      ZMatrix sub = submatrix(inv.gram, c.generators);
      LatticeInfo li;
      ZPoly scp;
      try {
        li = analyze_gram(sub);
        scp = frobenius_charpoly(sub, restrict_perm(inv.frobenius, c.generators), q);
      } catch (const Error& e) {
        reject(C + ": sublattice (" + std::string(e.what()) + ")");
      }
      if (li.rank != c.dim || li.det != c.det) reject(C + ": sublattice rank and det");
      if (square_class(li.det) != c.value) reject(C + ": square class of det");
      if (!find_candidate(a.admissible, c.dim, scp)) reject(C + ": charpoly matches an admissible candidate");
    } else {
      const AdmissibleCandidate* cand = nullptr;
      for (const auto* x : a.admissible.of_dimension(c.dim)) {
        if (x->subset == c.subset) cand = x;
      }
      if (!cand) reject(C + ": candidate subset");
      if (lcm_of(cand->indices) != c.k) reject(C + ": extension degree");
      ATResult at;
      try {
        at = disc_class(a.weil, c.k, c.dim, c.conditional);
      } catch (const Error& e) {
        reject(C + ": Artin-Tate limit (" + std::string(e.what()) + ")");
      }
      if (at.limit != c.limit || at.disc_class != c.value || at.exponent_trail() != c.trail) {
        reject(C + ": Artin-Tate class");
      }
      if (saturates(*cand, cp, a.tate, nullptr) == c.conditional) reject(C + ": conditional flag");
    }
    log.push_back(C + " = " + c.value.get_str() + (c.conditional ? " (conditional)" : ""));
  }
}

}  // namespace

std::string Certificate::to_text() const {
  std::vector<Block> blocks;
  Block s{"surface", {}};
  std::istringstream in(surface.to_text());
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) s.add("monomial", line);
  }
  blocks.push_back(s);
  for (const auto& a : primes) {
    for (auto& b : prime_blocks(a)) blocks.push_back(std::move(b));
  }
  Block d{"decision", {}};
  std::vector<std::uint32_t> ps;
  for (const auto& a : primes) ps.push_back(a.p);
  d.add("primes", join(ps));
  d.add("intersection", join(std::vector<int>(intersection.begin(), intersection.end())));
  for (const auto& e : exclusions) {
    d.add("exclusion", std::to_string(e.dim) + " " + e.first.get_str() + " " + e.second.get_str() + " " +
                           std::to_string(e.witness));
  }
  for (const auto& g : gaps) d.add("gap", g);
  d.add("conclusion", conclusion());
  blocks.push_back(d);
  return render(blocks);
}

VerifyReport verify_certificate(const std::string& text) {
  auto blocks = parse_blocks(text);
  VerifyReport rep;
  std::string surface_text;
  std::vector<ParsedPrime> primes;
  std::optional<Block> decision;
  for (const auto& b : blocks) {
    if (b.name == "surface") {
      for (const auto& m : b.all("monomial")) surface_text += m + "\n";
    } else if (b.name == "prime") {
      primes.push_back(parse_prime(b));
    } else if (b.name == "class") {
      long p = parse_long(b.one("p"), "prime");
      auto it = std::find_if(primes.begin(), primes.end(), [&](const ParsedPrime& x) { return x.a.p == p; });
      if (it == primes.end()) fail(ErrorCode::kParse, "class block for unknown prime " + std::to_string(p));
      it->a.classes.push_back(parse_class(b));
    } else if (b.name == "decision") {
      if (decision) fail(ErrorCode::kParse, "duplicate decision block");
      decision = b;
    } else {
      fail(ErrorCode::kParse, "unknown block [" + b.name + "]");
    }
  }
  if (surface_text.empty()) fail(ErrorCode::kParse, "missing surface block");
  if (primes.size() != 2) fail(ErrorCode::kParse, "certificate must cover exactly two primes");
  if (!decision) fail(ErrorCode::kParse, "missing decision block");
  SexticForm surface = SexticForm::parse(surface_text);
  rep.checks.push_back("surface parses");
  for (auto& pp : primes) {
    if (pp.a.p == 2) reject("odd prime");
    try {
      SurfaceModel m(surface, pp.a.p);
    } catch (const Error& e) {
      reject("surface reduces to a nonzero form mod " + std::to_string(pp.a.p));
    }
    verify_prime(pp, rep.checks);
  }
  if (primes[0].a.p == primes[1].a.p) reject("two distinct primes");

  Certificate re = decide(surface, primes[0].a, primes[1].a);
  const Block& d = *decision;
  if (d.one("primes") != std::to_string(primes[0].a.p) + " " + std::to_string(primes[1].a.p)) {
    reject("decision primes");
  }
  if (d.one("intersection") != join(std::vector<int>(re.intersection.begin(), re.intersection.end()))) {
    reject("intersection of admissible dimensions");
  }
  rep.checks.push_back("intersection " + d.one("intersection"));
  auto ex = d.all("exclusion");
  if (ex.size() != re.exclusions.size()) reject("exclusion list");
  for (std::size_t i = 0; i < ex.size(); ++i) {
    auto tok = split_ws(ex[i]);
    if (tok.size() != 4) fail(ErrorCode::kParse, "bad exclusion line");
    int dim = static_cast<int>(parse_long(tok[0], "dimension"));
    mpz_class x = parse_mpz(tok[1], "class"), y = parse_mpz(tok[2], "class");
    std::uint64_t l = static_cast<std::uint64_t>(parse_long(tok[3], "witness"));
    const auto& e = re.exclusions[i];
    if (dim != e.dim || x != e.first || y != e.second) reject("exclusion of dim " + tok[0]);
    if (classes_equal(x, y)) reject("classes " + tok[1] + " and " + tok[2] + " differ");
    if (!validate_witness(x, y, l)) reject("witness prime " + tok[3] + " for (" + tok[1] + ", " + tok[2] + ")");
    rep.checks.push_back("dim " + tok[0] + " excluded: " + tok[1] + " vs " + tok[2] + ", witness " + tok[3]);
  }
  if (d.all("gap") != re.gaps) reject("recorded gaps");
  if (d.one("conclusion") != re.conclusion()) reject("conclusion");
  rep.proven = re.proven;
  rep.checks.push_back("conclusion: " + re.conclusion());
  return rep;
}

}  // namespace k3rank
