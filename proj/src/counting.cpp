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

#include "k3rank/counting.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "k3rank/error.hpp"

namespace k3rank {

std::vector<mpz_class> TraceSeries::traces() const {
  std::vector<mpz_class> r;
  for (const auto& e : entries) r.push_back(e.trace);
  return r;
}

const TraceEntry* TraceSeries::find(std::uint32_t n) const {
  for (const auto& e : entries) {
    if (e.n == n) return &e;
  }
  return nullptr;
}

std::string TraceSeries::to_text() const {
  std::ostringstream os;
  os << "p " << p << '\n';
  for (const auto& e : entries) os << e.n << ' ' << e.trace.get_str() << '\n';
  return os.str();
}

TraceSeries TraceSeries::parse(const std::string& text, std::uint32_t p) {
  TraceSeries s;
  s.p = p;
  std::map<std::uint32_t, mpz_class> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    const std::string where = "trace file line " + std::to_string(lineno) + ": ";
    if (!(ls >> b) || (ls >> extra)) fail(ErrorCode::kParse, where + "expected 'n trace'");
    if (a == "p") {
      unsigned long v = 0;
      try {
        v = std::stoul(b);
      } catch (const std::exception&) {
        fail(ErrorCode::kParse, where + "bad prime");
      }
      if (s.p != 0 && s.p != v) fail(ErrorCode::kParse, where + "prime conflicts with the requested one");
      s.p = static_cast<std::uint32_t>(v);
      continue;
    }
    mpz_class n, t;
    if (n.set_str(a, 10) != 0 || n < 1 || n > 64) fail(ErrorCode::kParse, where + "bad degree '" + a + "'");
    if (!b.empty() && b[0] == '+') b.erase(0, 1);
    if (t.set_str(b, 10) != 0) fail(ErrorCode::kParse, where + "bad trace '" + b + "'");
    auto nn = static_cast<std::uint32_t>(n.get_ui());
    if (seen.count(nn)) fail(ErrorCode::kParse, where + "duplicate degree " + a);
    seen[nn] = t;
  }
  if (s.p == 0) fail(ErrorCode::kParse, "trace file does not name its prime");
  if (!is_prime_u64(s.p) || s.p == 2) fail(ErrorCode::kParse, "trace file prime must be an odd prime");
  for (const auto& [n, t] : seen) {
    if (!within_weil_bound(s.p, n, t)) {
      fail(ErrorCode::kInconsistent, "trace " + t.get_str() + " at n = " + std::to_string(n) + " violates the Weil bound");
    }
    s.entries.push_back({n, count_from_trace(s.p, n, t), t});
  }
  return s;
}

TraceSeries TraceSeries::load(const std::string& path, std::uint32_t p) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot read trace file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), p);
}

namespace {

mpz_class prime_power(std::uint32_t p, std::uint32_t n) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, n);
  return q;
}

}  // namespace

mpz_class trace_from_count(std::uint32_t p, std::uint32_t n, const mpz_class& count) {
  mpz_class q = prime_power(p, n);
  return count - 1 - q * q;
}

mpz_class count_from_trace(std::uint32_t p, std::uint32_t n, const mpz_class& trace) {
  mpz_class q = prime_power(p, n);
  return trace + 1 + q * q;
}

bool within_weil_bound(std::uint32_t p, std::uint32_t n, const mpz_class& trace) {
  return abs(trace) <= 22 * prime_power(p, n);
}

namespace {

// Coefficients of f(x, y, 1) = sum_i c_i(x) y^i: c_i(x) = sum_a k[i][a] x^a.
struct SliceShape {
  std::array<std::vector<FElem>, 7> k;
};

SliceShape slice_shape(const TernaryForm& F) {
  SliceShape s;
  for (int i = 0; i <= 6; ++i) {
    for (int a = 0; a <= 6 - i; ++a) s.k[i].push_back(F.coeff(a, i));
  }
  return s;
}

class LogKernel {
 public:
  LogKernel(const FieldCtx& f, const TernaryForm& F) : t_(*f.tables()) {
    auto shape = slice_shape(F);
    for (int i = 0; i <= 6; ++i) {
      for (const auto& c : shape.k[i]) k_[i].push_back(f.to_log(c));
    }
    for (int a = 0; a <= 6; ++a) line_.push_back(f.to_log(F.coeff(a, 6 - a)));
  }

  // Horner over log-domain coefficients (low-to-high) at log x (or kZero).
  std::uint32_t horner(const std::uint32_t* c, int deg, std::uint32_t x) const {
    constexpr std::uint32_t Z = LogTables::kZero;
    std::uint32_t acc = c[deg];
    for (int i = deg - 1; i >= 0; --i) {
      acc = (acc == Z || x == Z) ? c[i] : t_.add(t_.mul(acc, x), c[i]);
    }
    return acc;
  }

  // sum over y in F_q of chi(f(x, y, 1)).
  std::int64_t slice(std::uint32_t x) const {
    constexpr std::uint32_t Z = LogTables::kZero;
    std::uint32_t c[7];
    for (int i = 0; i <= 6; ++i) c[i] = horner(k_[i].data(), static_cast<int>(k_[i].size()) - 1, x);
    std::int64_t sum = LogTables::chi(c[0]);
    const std::uint32_t order = t_.order;
    const std::uint32_t* zech = t_.zech.data();
    for (std::uint32_t y = 0; y < order; ++y) {
      std::uint32_t acc = c[6];
      for (int i = 5; i >= 0; --i) {
        if (acc == Z) {
          acc = c[i];
          continue;
        }
        std::uint32_t s = acc + y;
        if (s >= order) s -= order;
        if (c[i] == Z) {
          acc = s;
          continue;
        }
        std::uint32_t d = c[i] >= s ? c[i] - s : c[i] + order - s;
        std::uint32_t z = zech[d];
        if (z == Z) {
          acc = Z;
        } else {
          acc = s + z;
          if (acc >= order) acc -= order;
        }
      }
      sum += LogTables::chi(acc);
    }
    return sum;
  }

  // Points on z = 0: [x : 1 : 0] and [1 : 0 : 0].
  std::int64_t line_at_infinity() const {
    std::int64_t sum = LogTables::chi(line_[6]);
    sum += LogTables::chi(line_[0]);  // x = 0
    for (std::uint32_t x = 0; x < t_.order; ++x) sum += LogTables::chi(horner(line_.data(), 6, x));
    return sum;
  }

 private:
  const LogTables& t_;
  std::array<std::vector<std::uint32_t>, 7> k_;
  std::vector<std::uint32_t> line_;
};

class BasisKernel {
 public:
  BasisKernel(const FieldCtx& f, const TernaryForm& F) : f_(f), shape_(slice_shape(F)) {
    for (int a = 0; a <= 6; ++a) line_.push_back(F.coeff(a, 6 - a));
  }

  FElem horner(const std::vector<FElem>& c, const FElem& x) const {
    FElem acc = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) acc = f_.add(f_.mul(acc, x), c[i]);
    return acc;
  }

  std::int64_t slice(const FElem& x) const {
    std::vector<FElem> c;
    for (int i = 0; i <= 6; ++i) c.push_back(horner(shape_.k[i], x));
    std::int64_t sum = 0;
    const std::uint64_t q = f_.size();
    for (std::uint64_t code = 0; code < q; ++code) sum += f_.chi(horner(c, f_.from_code(code)));
    return sum;
  }

  std::int64_t line_at_infinity() const {
    std::int64_t sum = f_.chi(line_[6]);
    const std::uint64_t q = f_.size();
    for (std::uint64_t code = 0; code < q; ++code) sum += f_.chi(horner(line_, f_.from_code(code)));
    return sum;
  }

 private:
  const FieldCtx& f_;
  SliceShape shape_;
  std::vector<FElem> line_;
};

// Slices as (log index or kZero, weight). In log form x = g^j, and the
// Frobenius orbit of x is {j p^i mod (q - 1)}.
std::vector<std::pair<std::uint32_t, std::uint32_t>> slice_plan(std::uint32_t p, std::uint32_t n, std::uint64_t q,
                                                                bool orbits) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> plan;
  plan.push_back({LogTables::kZero, 1});
  const std::uint64_t order = q - 1;
  for (std::uint64_t j = 0; j < order; ++j) {
    if (!orbits) {
      plan.push_back({static_cast<std::uint32_t>(j), 1});
      continue;
    }
    std::uint64_t cur = j;
    bool rep = true;
    std::uint32_t size = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i > 0 && cur == j) break;
      if (cur < j) {
        rep = false;
        break;
      }
      ++size;
      cur = (cur * p) % order;
    }
    if (rep) plan.push_back({static_cast<std::uint32_t>(j), size});
  }
  return plan;
}

template <typename SliceFn>
std::int64_t run_plan(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& plan, unsigned workers,
                      const SliceFn& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(plan.size())));
  std::vector<std::int64_t> partial(workers, 0);
  auto job = [&](unsigned w) {
    std::int64_t acc = 0;
    // Interleaved assignment balances slices of unequal cost.
    for (std::size_t i = w; i < plan.size(); i += workers) acc += static_cast<std::int64_t>(plan[i].second) * fn(plan[i].first);
    partial[w] = acc;
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& th : pool) th.join();
  }
  std::int64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace

mpz_class character_sum(const SurfaceModel& model, std::uint32_t n, const CountOptions& options) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  if (!options.skip_reduction_check) {
    auto rep = good_reduction(model);
    if (!rep.good) fail(ErrorCode::kBadReduction, "bad reduction at p = " + std::to_string(model.p()) + ": " +
                                                      rep.witness->description);
  }
  FieldPtr field = FieldCtx::make(model.p(), n, model.options());
  const FieldCtx& f = *field;
  TernaryForm F = model.over(field);
  const std::uint64_t q = f.size();
  auto plan = slice_plan(model.p(), n, q, options.frobenius_orbits);
  std::int64_t total = 0;
  if (f.has_tables()) {
    LogKernel kernel(f, F);
    total = kernel.line_at_infinity() + run_plan(plan, options.workers, [&](std::uint32_t x) { return kernel.slice(x); });
  } else {
    // Without tables there is no log index; walk x by powers of a primitive
    // element so the same plan applies.
    BasisKernel kernel(f, F);
    FElem g = f.zero();
    for (std::uint64_t code = 2; code < q; ++code) {
      FElem cand = f.from_code(code);
      bool primitive = true;
      for (auto r : prime_factors(q - 1)) {
        if (f.is_one(f.pow(cand, (q - 1) / r))) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        g = cand;
        break;
      }
    }
    total = kernel.line_at_infinity() + run_plan(plan, options.workers, [&](std::uint32_t x) {
              return kernel.slice(x == LogTables::kZero ? f.zero() : f.pow(g, std::uint64_t{x}));
            });
  }
  return mpz_class(std::to_string(total));
}

mpz_class count_points(const SurfaceModel& model, std::uint32_t n, const CountOptions& options) {
  mpz_class q = prime_power(model.p(), n);
  return q * q + q + 1 + character_sum(model, n, options);
}

mpz_class count_points_naive(const SurfaceModel& model, const FieldPtr& field) {
  TernaryForm F = model.over(field);
  const FieldCtx& f = *field;
  std::int64_t fibers = 0;
  for (const auto& pt : projective_points(field)) {
    FElem v = F.eval(pt);
    if (f.is_zero(v)) {
      fibers += 1;
    } else {
      fibers += f.sqrt(v) ? 2 : 0;
    }
  }
  return mpz_class(std::to_string(fibers));
}

std::string form_hash(const SurfaceModel& model) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  feed("p=" + std::to_string(model.p()) + ";");
  for (const auto& c : model.reduced().coeffs()) feed(std::to_string(c.c[0]) + ",");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CountCache::CountCache(std::string dir) : dir_(std::move(dir)) {
  std::filesystem::path d(dir_);
  path_ = (d / "counts.txt").string();
}

std::optional<mpz_class> CountCache::lookup(const std::string& hash, std::uint32_t p, std::uint32_t n,
                                            std::vector<std::string>& warnings) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::vector<mpz_class> found;
  std::string line;
  int lineno = 0;
  int malformed = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string h, extra;
    unsigned long pp = 0, nn = 0;
    std::string count_text;
    if (line.empty()) continue;
    if (!(ls >> h >> pp >> nn >> count_text) || (ls >> extra) || h.size() != 16) {
      ++malformed;
      continue;
    }
    mpz_class c;
    if (c.set_str(count_text, 10) != 0) {
      ++malformed;
      continue;
    }
    if (h == hash && pp == p && nn == n) found.push_back(c);
  }
  if (malformed > 0) warnings.push_back("count cache " + path_ + ": ignored " + std::to_string(malformed) + " malformed line(s)");
  if (found.empty()) return std::nullopt;
  for (const auto& c : found) {
    if (c != found.front()) {
      warnings.push_back("count cache: conflicting entries for p = " + std::to_string(p) + ", n = " + std::to_string(n) +
                         "; recounting");
      return std::nullopt;
    }
  }
  if (!within_weil_bound(p, n, trace_from_count(p, n, found.front()))) {
    warnings.push_back("count cache: entry for p = " + std::to_string(p) + ", n = " + std::to_string(n) +
                       " violates the Weil bound; recounting");
    return std::nullopt;
  }
  return found.front();
}

void CountCache::store(const std::string& hash, std::uint32_t p, std::uint32_t n, const mpz_class& count) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::ofstream out(path_, std::ios::app);
  if (!out) fail(ErrorCode::kIo, "cannot write count cache " + path_);
  out << hash << ' ' << p << ' ' << n << ' ' << count.get_str() << '\n';
}

TraceSeries trace_series(const SurfaceModel& model, std::uint32_t n_max, const CountOptions& options,
                         const CountCache* cache) {
  if (n_max < 1) fail(ErrorCode::kInvalidArgument, "n_max must be >= 1");
  TraceSeries s;
  s.p = model.p();
  CountOptions inner = options;
  if (!options.skip_reduction_check) {
    auto rep = good_reduction(model);
    if (!rep.good) fail(ErrorCode::kBadReduction, "bad reduction at p = " + std::to_string(model.p()) + ": " +
                                                      rep.witness->description);
    inner.skip_reduction_check = true;
  }
  const std::string hash = form_hash(model);
  // Cached counts first, so an oversized field fails before any counting.
  std::vector<std::optional<mpz_class>> cached(n_max + 1);
  const mpz_class limit(std::to_string(model.options().cardinality_limit));
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (cache) cached[n] = cache->lookup(hash, model.p(), n, s.warnings);
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), model.p(), n);
    if (!cached[n] && q > limit) {
      fail(ErrorCode::kLimit, "field size " + std::to_string(model.p()) + "^" + std::to_string(n) +
                                  " exceeds the cardinality limit " + limit.get_str() + "; raise it to count");
    }
  }
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    std::optional<mpz_class> count = cached[n];
    if (count) {
      ++s.cache_hits;
    } else {
      count = count_points(model, n, inner);
      if (cache) cache->store(hash, model.p(), n, *count);
    }
    mpz_class t = trace_from_count(model.p(), n, *count);
    if (!within_weil_bound(model.p(), n, t)) fail(ErrorCode::kInternal, "computed trace violates the Weil bound");
    s.entries.push_back({n, *count, t});
  }
  return s;
}

}  // namespace k3rank
