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

// The two-prime Picard rank argument: per-prime analysis, the decision and a
// self-contained text certificate that can be re-checked without counting.

#ifndef K3RANK_CERTIFY_HPP_
#define K3RANK_CERTIFY_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3rank/counting.hpp"
#include "k3rank/lattice.hpp"
#include "k3rank/surface.hpp"
#include "k3rank/tate.hpp"
#include "k3rank/weil.hpp"

namespace k3rank {

constexpr int kCertificateVersion = 1;

struct ConicRequest {
  std::string f3_text;  // "coefficient a b c" lines of a cubic
  std::string source;   // file name, for reports
  unsigned degree = 3;  // conics are sought over F_{p^degree}
};

struct DivisorConfig {
  std::vector<unsigned> line_degrees;
  std::vector<ConicRequest> conics;

  bool empty() const { return line_degrees.empty() && conics.empty(); }
};

// Lines "p lines k" and "p conics k file", '#' comments. Files are resolved
// against base_dir.
std::map<std::uint32_t, DivisorConfig> parse_divisor_config(const std::string& text, const std::string& base_dir);

struct AnalysisOptions {
  unsigned workers = 1;
  std::uint64_t seed = 0;
  const CountCache* cache = nullptr;
};

struct PrimeConfig {
  std::uint32_t p = 0;
  std::uint32_t n_max = 0;
  // Traces supplied up front; missing n <= n_max are counted.
  std::optional<TraceSeries> traces;
  DivisorConfig divisors;
};

struct ClassRecord {
  int dim = 0;
  mpz_class value;
  std::string source;  // "lattice" or "artin-tate"
  bool conditional = false;
  std::string justification;
  // lattice
  std::vector<int> generators;
  mpz_class det;
  // artin-tate
  std::vector<std::size_t> subset;  // candidate subset of free factors
  unsigned k = 0;
  mpz_class limit;
  std::string trail;
};

struct DivisorInventory {
  std::vector<std::string> labels;  // generator labels, H first
  std::vector<std::string> curves;  // "label: plane form (field degree d)"
  ZMatrix gram;
  std::vector<int> frobenius;
  LatticeInfo lattice;
  ZPoly charpoly;  // of q * Frob on the span
};

// Split curves from the configured families, their Gram matrix and the
// Frobenius permutation of the generators. Without curves only H remains.
DivisorInventory build_inventory(const SurfaceModel& model, const DivisorConfig& config, const AnalysisOptions& options,
                                 std::vector<std::string>* notes = nullptr);

struct PrimeAnalysis {
  std::uint32_t p = 0;
  TraceSeries traces;
  WeilPolynomial weil;
  std::vector<std::string> weil_notes;
  TateDecomposition tate;
  AdmissibleDims admissible;
  DivisorInventory divisors;
  std::vector<ClassRecord> classes;
  std::vector<std::string> notes;

  // Preferred class usable for exclusions: explicit lattices first, then
  // unconditional Artin-Tate classes on which all candidates agree.
  std::optional<ClassRecord> usable_class(int dim) const;
};

PrimeAnalysis analyze_prime(const SurfaceModel& model, const PrimeConfig& config, const AnalysisOptions& options);

struct Exclusion {
  int dim = 0;
  mpz_class first, second;
  std::uint64_t witness = 0;
};

struct Certificate {
  SexticForm surface;
  std::vector<PrimeAnalysis> primes;
  std::set<int> intersection;
  std::vector<Exclusion> exclusions;
  std::vector<std::string> gaps;
  bool proven = false;

  std::string conclusion() const;
  std::string to_text() const;
};

Certificate decide(const SexticForm& surface, const PrimeAnalysis& a, const PrimeAnalysis& b);

struct VerifyReport {
  bool proven = false;
  std::vector<std::string> checks;  // one line per passed check
};

// Re-checks every algebraic claim of a serialized certificate. Throws
// kVerification naming the first failing check, kParse on malformed text.
VerifyReport verify_certificate(const std::string& text);

struct DegreeBound {
  int d_min = 0;
  mpz_class genus_drop;
};

// A curve C with H.C = d on a surface whose rank-2 lattice has |disc| >= D
// satisfies 2 C^2 - d^2 <= -D with C^2 >= -2: the smallest such d, and the
// genus drop ceil((d^2 + D) / 4) at that d.
DegreeBound split_degree_bound(const mpz_class& disc);

}  // namespace k3rank

#endif  // K3RANK_CERTIFY_HPP_
