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

// Point counts #S(F_{p^n}) for w^2 = f6 and the trace series
// t_n = N_n - 1 - p^{2n} of Frobenius on H^2.

#ifndef K3RANK_COUNTING_HPP_
#define K3RANK_COUNTING_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3rank/surface.hpp"

namespace k3rank {

struct CountOptions {
  unsigned workers = 1;
  // Slices x and x^p carry the same character sum; count one per orbit.
  bool frobenius_orbits = true;
  // Test-only: skip the good-reduction precondition.
  bool skip_reduction_check = false;
};

struct TraceEntry {
  std::uint32_t n = 0;
  mpz_class count;
  mpz_class trace;
};

struct TraceSeries {
  std::uint32_t p = 0;
  std::vector<TraceEntry> entries;  // sorted by n
  std::vector<std::string> warnings;
  int cache_hits = 0;

  std::vector<mpz_class> traces() const;
  const TraceEntry* find(std::uint32_t n) const;
  // "p <prime>" header followed by "n trace" lines.
  std::string to_text() const;
  // Fixture format: optional "p <prime>" line, then "n trace" lines, '#'
  // comments. The prime may instead be supplied by the caller.
  static TraceSeries parse(const std::string& text, std::uint32_t p = 0);
  static TraceSeries load(const std::string& path, std::uint32_t p = 0);
};

mpz_class trace_from_count(std::uint32_t p, std::uint32_t n, const mpz_class& count);
mpz_class count_from_trace(std::uint32_t p, std::uint32_t n, const mpz_class& trace);
bool within_weil_bound(std::uint32_t p, std::uint32_t n, const mpz_class& trace);

// Sum over P^2(F_q) of chi(f6(P)); N = q^2 + q + 1 + this.
mpz_class character_sum(const SurfaceModel& model, std::uint32_t n, const CountOptions& options = {});
mpz_class count_points(const SurfaceModel& model, std::uint32_t n, const CountOptions& options = {});
// Oracle: fiber sizes 1 + chi(f6(P)) summed point by point.
mpz_class count_points_naive(const SurfaceModel& model, const FieldPtr& field);

// FNV-1a of the reduced form, as 16 hex digits.
std::string form_hash(const SurfaceModel& model);

// Append-only text cache "formhash p n N", one count per line.
class CountCache {
 public:
  explicit CountCache(std::string dir);

  const std::string& path() const { return path_; }
  // Returns the stored count when the entry is unique and plausible; adds a
  // warning and returns none when it is corrupt.
  std::optional<mpz_class> lookup(const std::string& hash, std::uint32_t p, std::uint32_t n,
                                  std::vector<std::string>& warnings) const;
  void store(const std::string& hash, std::uint32_t p, std::uint32_t n, const mpz_class& count) const;

 private:
  std::string dir_;
  std::string path_;
};

TraceSeries trace_series(const SurfaceModel& model, std::uint32_t n_max, const CountOptions& options = {},
                         const CountCache* cache = nullptr);

}  // namespace k3rank

#endif  // K3RANK_COUNTING_HPP_
