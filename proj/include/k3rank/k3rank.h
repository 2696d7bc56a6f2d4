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

/* Stable C interface to libk3rank. All functions return a k3r_status; on
 * failure k3r_last_error() describes the problem for the calling thread.
 * Strings returned through char** are heap-allocated and must be released
 * with k3r_string_free. */

#ifndef K3RANK_K3RANK_H_
#define K3RANK_K3RANK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define K3R_API __declspec(dllexport)
#else
#define K3R_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum k3r_status {
  K3R_OK = 0,
  K3R_INVALID_ARGUMENT = 1,
  K3R_PARSE = 2,
  K3R_IO = 3,
  K3R_LIMIT = 4,
  K3R_BAD_REDUCTION = 5,
  K3R_DEGENERATE = 6,
  K3R_INCONSISTENT = 7,
  K3R_INSUFFICIENT_DATA = 8,
  K3R_AMBIGUOUS = 9,
  K3R_UNIQUENESS = 10,
  K3R_GEOMETRY = 11,
  K3R_VERIFICATION = 12,
  K3R_INTERNAL = 13
} k3r_status;

typedef struct k3r_surface k3r_surface;
typedef struct k3r_traces k3r_traces;

K3R_API const char* k3r_version(void);
K3R_API const char* k3r_status_name(k3r_status status);
/* Message of the last failed call on this thread, "" if none. */
K3R_API const char* k3r_last_error(void);
K3R_API void k3r_string_free(char* s);

/* Integral sextic, one "coefficient a b c" monomial per line. */
K3R_API k3r_status k3r_surface_parse(const char* text, k3r_surface** out);
K3R_API k3r_status k3r_surface_load(const char* path, k3r_surface** out);
K3R_API void k3r_surface_free(k3r_surface* s);
K3R_API k3r_status k3r_surface_text(const k3r_surface* s, char** out);

/* good is 1 when the branch sextic is smooth mod p; otherwise witness
 * describes a singular point (may be NULL if not wanted). */
K3R_API k3r_status k3r_good_reduction(const k3r_surface* s, uint32_t p, uint64_t seed, int* good, char** witness);

typedef struct k3r_options {
  uint32_t workers;           /* 0 means 1 */
  uint64_t cardinality_limit; /* largest field size, 0 for the default 5^8 */
  uint64_t seed;
  const char* cache_dir; /* NULL disables the count cache */
} k3r_options;

K3R_API void k3r_options_init(k3r_options* o);

K3R_API k3r_status k3r_count(const k3r_surface* s, uint32_t p, uint32_t n_max, const k3r_options* o,
                             k3r_traces** out);

/* Fixture format: optional "p <prime>" line, then "n trace" lines. p = 0
 * takes the prime from the text. */
K3R_API k3r_status k3r_traces_parse(const char* text, uint32_t p, k3r_traces** out);
K3R_API k3r_status k3r_traces_load(const char* path, uint32_t p, k3r_traces** out);
K3R_API void k3r_traces_free(k3r_traces* t);
K3R_API uint32_t k3r_traces_prime(const k3r_traces* t);
K3R_API size_t k3r_traces_size(const k3r_traces* t);
/* Entry i in ascending n; the trace is returned in decimal. */
K3R_API k3r_status k3r_traces_get(const k3r_traces* t, size_t i, uint32_t* n, char** trace);
K3R_API k3r_status k3r_traces_text(const k3r_traces* t, char** out);

/* known_factors: NULL or newline-separated coefficient lists (highest
 * degree first) of polynomials known to divide Phi. */
K3R_API k3r_status k3r_weil_report(const k3r_traces* t, const char* known_factors, char** out);
K3R_API k3r_status k3r_tate_report(const k3r_traces* t, const char* known_factors, char** out);

/* config: divisor configuration text ("p lines k", "p conics k file");
 * relative files are resolved against base_dir. */
K3R_API k3r_status k3r_divisors_report(const k3r_surface* s, uint32_t p, const char* config, const char* base_dir,
                                       const k3r_options* o, char** out);

typedef struct k3r_prime_input {
  uint32_t p;
  uint32_t n_max;
  const k3r_traces* traces; /* optional supplied traces */
} k3r_prime_input;

/* Runs both primes and writes the certificate text. proven is 1 when rank 1
 * is proven and 0 when the result is inconclusive. */
K3R_API k3r_status k3r_certify(const k3r_surface* s, const k3r_prime_input* primes, size_t n_primes,
                               const char* config, const char* base_dir, const k3r_options* o, char** certificate,
                               int* proven);

/* Re-checks a certificate without counting. A failed check returns
 * K3R_VERIFICATION and names the check in k3r_last_error(). */
K3R_API k3r_status k3r_verify(const char* certificate, int* proven, char** report);

/* Smallest degree of a split curve that could realize a rank-2 lattice of
 * discriminant disc (nonzero, sign ignored), and the matching genus drop. */
K3R_API k3r_status k3r_split_degree_bound(int64_t disc, int64_t* d_min, int64_t* genus_drop);

#ifdef __cplusplus
}
#endif

#endif /* K3RANK_K3RANK_H_ */
