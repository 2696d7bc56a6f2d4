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

#include "k3rank/k3rank.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "k3rank/certify.hpp"
#include "k3rank/error.hpp"
#include "k3rank/reports.hpp"

struct k3r_surface {
  k3rank::SexticForm form;
};

struct k3r_traces {
  k3rank::TraceSeries series;
};

namespace {

using k3rank::Error;
using k3rank::ErrorCode;

thread_local std::string g_last_error;

template <typename F>
k3r_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return K3R_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<k3r_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return K3R_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return K3R_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return K3R_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
void require(const T* p, const char* what) {
  if (!p) k3rank::fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

k3rank::FieldOptions field_options(const k3r_options* o) {
  k3rank::FieldOptions f;
  if (o && o->cardinality_limit) f.cardinality_limit = o->cardinality_limit;
  return f;
}

k3rank::AnalysisOptions analysis_options(const k3r_options* o, const k3rank::CountCache* cache) {
  k3rank::AnalysisOptions a;
  a.workers = o && o->workers ? o->workers : 1;
  a.seed = o ? o->seed : 0;
  a.cache = cache;
  return a;
}

std::optional<k3rank::CountCache> make_cache(const k3r_options* o) {
  if (!o || !o->cache_dir || !*o->cache_dir) return std::nullopt;
  return k3rank::CountCache(o->cache_dir);
}

std::vector<k3rank::ZPoly> parse_known(const char* text) {
  std::vector<k3rank::ZPoly> out;
  if (!text) return out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(k3rank::parse_coeff_list(line));
  }
  return out;
}

k3rank::WeilPolynomial reconstruct_from(const k3r_traces* t, const char* known, k3rank::ReconstructReport* rep) {
  require(t, "traces");
  return k3rank::reconstruct(t->series.traces(), t->series.p, parse_known(known), rep);
}

std::map<std::uint32_t, k3rank::DivisorConfig> parse_config(const char* config, const char* base_dir) {
  if (!config) return {};
  return k3rank::parse_divisor_config(config, base_dir ? base_dir : "");
}

}  // namespace

extern "C" {

const char* k3r_version(void) { return "0.1.0"; }

const char* k3r_status_name(k3r_status status) {
  if (status == K3R_OK) return "ok";
  if (status < K3R_INVALID_ARGUMENT || status > K3R_INTERNAL) return "unknown";
  return k3rank::error_code_name(static_cast<ErrorCode>(status));
}

const char* k3r_last_error(void) { return g_last_error.c_str(); }

void k3r_string_free(char* s) { std::free(s); }

k3r_status k3r_surface_parse(const char* text, k3r_surface** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new k3r_surface{k3rank::SexticForm::parse(text)};
  });
}

k3r_status k3r_surface_load(const char* path, k3r_surface** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new k3r_surface{k3rank::SexticForm::load(path)};
  });
}

void k3r_surface_free(k3r_surface* s) { delete s; }

k3r_status k3r_surface_text(const k3r_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    require(out, "out");
    *out = dup_string(s->form.to_text());
  });
}

k3r_status k3r_good_reduction(const k3r_surface* s, uint32_t p, uint64_t seed, int* good, char** witness) {
  return guarded([&] {
    require(s, "surface");
    require(good, "good");
    k3rank::SurfaceModel m(s->form, p);
    auto rep = k3rank::good_reduction(m, seed);
    *good = rep.good ? 1 : 0;
    if (witness) *witness = dup_string(rep.witness ? rep.witness->description : "");
  });
}

void k3r_options_init(k3r_options* o) {
  if (!o) return;
  o->workers = 1;
  o->cardinality_limit = 0;
  o->seed = 0;
  o->cache_dir = nullptr;
}

k3r_status k3r_count(const k3r_surface* s, uint32_t p, uint32_t n_max, const k3r_options* o, k3r_traces** out) {
  return guarded([&] {
    require(s, "surface");
    require(out, "out");
    if (n_max < 1) k3rank::fail(ErrorCode::kInvalidArgument, "n_max must be >= 1");
    k3rank::SurfaceModel m(s->form, p, field_options(o));
    auto cache = make_cache(o);
    k3rank::CountOptions co;
    co.workers = o && o->workers ? o->workers : 1;
    *out = new k3r_traces{k3rank::trace_series(m, n_max, co, cache ? &*cache : nullptr)};
  });
}

k3r_status k3r_traces_parse(const char* text, uint32_t p, k3r_traces** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new k3r_traces{k3rank::TraceSeries::parse(text, p)};
  });
}

k3r_status k3r_traces_load(const char* path, uint32_t p, k3r_traces** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new k3r_traces{k3rank::TraceSeries::load(path, p)};
  });
}

void k3r_traces_free(k3r_traces* t) { delete t; }

uint32_t k3r_traces_prime(const k3r_traces* t) { return t ? t->series.p : 0; }

size_t k3r_traces_size(const k3r_traces* t) { return t ? t->series.entries.size() : 0; }

k3r_status k3r_traces_get(const k3r_traces* t, size_t i, uint32_t* n, char** trace) {
  return guarded([&] {
    require(t, "traces");
    if (i >= t->series.entries.size()) k3rank::fail(ErrorCode::kInvalidArgument, "trace index out of range");
    const auto& e = t->series.entries[i];
    if (n) *n = e.n;
    if (trace) *trace = dup_string(e.trace.get_str());
  });
}

k3r_status k3r_traces_text(const k3r_traces* t, char** out) {
  return guarded([&] {
    require(t, "traces");
    require(out, "out");
    *out = dup_string(t->series.to_text());
  });
}

k3r_status k3r_weil_report(const k3r_traces* t, const char* known_factors, char** out) {
  return guarded([&] {
    require(out, "out");
    k3rank::ReconstructReport rep;
    auto w = reconstruct_from(t, known_factors, &rep);
    *out = dup_string(k3rank::weil_report(w, rep));
  });
}

k3r_status k3r_tate_report(const k3r_traces* t, const char* known_factors, char** out) {
  return guarded([&] {
    require(out, "out");
    auto w = reconstruct_from(t, known_factors, nullptr);
    *out = dup_string(k3rank::tate_report(w));
  });
}

k3r_status k3r_divisors_report(const k3r_surface* s, uint32_t p, const char* config, const char* base_dir,
                               const k3r_options* o, char** out) {
  return guarded([&] {
    require(s, "surface");
    require(out, "out");
    auto cfg = parse_config(config, base_dir);
    k3rank::SurfaceModel m(s->form, p, field_options(o));
    std::vector<std::string> notes;
    auto inv = k3rank::build_inventory(m, cfg[p], analysis_options(o, nullptr), &notes);
    *out = dup_string(k3rank::divisors_report(p, inv, notes));
  });
}

k3r_status k3r_certify(const k3r_surface* s, const k3r_prime_input* primes, size_t n_primes, const char* config,
                       const char* base_dir, const k3r_options* o, char** certificate, int* proven) {
  return guarded([&] {
    require(s, "surface");
    require(primes, "primes");
    require(certificate, "certificate");
    if (n_primes != 2) k3rank::fail(ErrorCode::kInvalidArgument, "certify needs exactly two primes");
    if (primes[0].p == primes[1].p) k3rank::fail(ErrorCode::kInvalidArgument, "the two primes must differ");
    auto cfg = parse_config(config, base_dir);
    auto cache = make_cache(o);
    auto opts = analysis_options(o, cache ? &*cache : nullptr);
    std::vector<k3rank::PrimeAnalysis> res;
    for (std::size_t i = 0; i < 2; ++i) {
      k3rank::PrimeConfig pc;
      pc.p = primes[i].p;
      pc.n_max = primes[i].n_max;
      if (primes[i].traces) pc.traces = primes[i].traces->series;
      pc.divisors = cfg[pc.p];
      res.push_back(k3rank::analyze_prime(k3rank::SurfaceModel(s->form, pc.p, field_options(o)), pc, opts));
    }
    auto cert = k3rank::decide(s->form, res[0], res[1]);
    *certificate = dup_string(cert.to_text());
    if (proven) *proven = cert.proven ? 1 : 0;
  });
}

k3r_status k3r_verify(const char* certificate, int* proven, char** report) {
  return guarded([&] {
    require(certificate, "certificate");
    auto rep = k3rank::verify_certificate(certificate);
    if (proven) *proven = rep.proven ? 1 : 0;
    if (report) {
      std::string text;
      for (const auto& c : rep.checks) text += "ok: " + c + "\n";
      *report = dup_string(text);
    }
  });
}

k3r_status k3r_split_degree_bound(int64_t disc, int64_t* d_min, int64_t* genus_drop) {
  return guarded([&] {
    auto b = k3rank::split_degree_bound(mpz_class(static_cast<long>(disc)));
    if (d_min) *d_min = b.d_min;
    if (genus_drop) {
      if (!b.genus_drop.fits_slong_p()) k3rank::fail(ErrorCode::kLimit, "genus drop does not fit in 64 bits");
      *genus_drop = b.genus_drop.get_si();
    }
  });
}

}  // extern "C"
