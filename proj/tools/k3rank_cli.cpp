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

// Command-line front end. Talks to the library only through k3rank.h.
//
// Exit codes: 0 rank 1 proven (or command succeeded), 2 inconclusive,
// 1 error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3rank/k3rank.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;
constexpr const char* kCacheEnv = "K3RANK_CACHE_DIR";

struct Failure {
  k3r_status status;
  std::string message;
};

void check(k3r_status st) {
  if (st != K3R_OK) throw Failure{st, k3r_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw Failure{K3R_INVALID_ARGUMENT, msg}; }

struct CString {
  char* p = nullptr;
  ~CString() { k3r_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using SurfacePtr = std::unique_ptr<k3r_surface, decltype(&k3r_surface_free)>;
using TracesPtr = std::unique_ptr<k3r_traces, decltype(&k3r_traces_free)>;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{K3R_IO, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out || !(out << text)) throw Failure{K3R_IO, "cannot write " + out_path};
}

// --surface is either a sextic file or a directory holding surface.txt,
// optional divisors.conf and optional traces_p<p>.txt.
struct SurfaceInput {
  std::string path;
  std::optional<fs::path> dir;

  std::string sextic() const { return dir ? (*dir / "surface.txt").string() : path; }
  std::optional<std::string> traces_for(std::uint32_t p) const {
    if (!dir) return std::nullopt;
    auto f = *dir / ("traces_p" + std::to_string(p) + ".txt");
    if (!fs::exists(f)) return std::nullopt;
    return f.string();
  }
  std::optional<std::string> config() const {
    if (!dir) return std::nullopt;
    auto f = *dir / "divisors.conf";
    if (!fs::exists(f)) return std::nullopt;
    return f.string();
  }
};

struct Args {
  std::string surface;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> nmax;
  unsigned workers = 1;
  std::uint64_t limit_override = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> traces;  // "path" or "p:path"
  std::string cache_dir;
  std::vector<std::string> lines;   // "p:k"
  std::vector<std::string> f3;      // "p:path" or "p:path:k"
  std::string config;
  std::vector<std::string> known;
  std::string out;
  std::string certificate;
};

SurfaceInput surface_input(const Args& a) {
  if (a.surface.empty()) usage_error("--surface is required");
  SurfaceInput s{a.surface, std::nullopt};
  if (fs::is_directory(a.surface)) s.dir = fs::path(a.surface);
  return s;
}

SurfacePtr load_surface(const SurfaceInput& in) {
  k3r_surface* s = nullptr;
  check(k3r_surface_load(in.sextic().c_str(), &s));
  return SurfacePtr(s, &k3r_surface_free);
}

k3r_options options(const Args& a) {
  k3r_options o;
  k3r_options_init(&o);
  o.workers = a.workers;
  o.cardinality_limit = a.limit_override;
  o.seed = a.seed;
  o.cache_dir = a.cache_dir.empty() ? nullptr : a.cache_dir.c_str();
  return o;
}

std::uint32_t parse_prime_prefix(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used == s.size() && v > 0 && v < (1ul << 31)) return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
  }
  usage_error("bad prime '" + s + "' in " + flag);
}

// Explicit "p:path" trace files, plus "path" when only one prime is in play.
std::map<std::uint32_t, std::string> trace_files(const Args& a, const SurfaceInput* surf) {
  std::map<std::uint32_t, std::string> out;
  if (surf) {
    for (auto p : a.primes) {
      if (auto f = surf->traces_for(p)) out[p] = *f;
    }
  }
  for (const auto& t : a.traces) {
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      if (a.primes.size() > 1) usage_error("--traces needs the form p:path with several primes");
      out[a.primes.empty() ? 0 : a.primes[0]] = t;
    } else {
      out[parse_prime_prefix(t.substr(0, colon), "--traces")] = t.substr(colon + 1);
    }
  }
  return out;
}

TracesPtr load_traces(const std::string& path, std::uint32_t p) {
  k3r_traces* t = nullptr;
  check(k3r_traces_load(path.c_str(), p, &t));
  return TracesPtr(t, &k3r_traces_free);
}

std::uint32_t nmax_for(const Args& a, std::size_t i) {
  if (a.nmax.empty()) usage_error("--nmax is required");
  if (a.nmax.size() == 1) return a.nmax[0];
  if (a.nmax.size() != a.primes.size()) usage_error("--nmax needs one value or one per prime");
  return a.nmax[i];
}

// Divisor configuration text from --config, the surface directory and the
// --lines / --f3 shortcuts. Shortcut paths are made absolute so one base
// directory serves all entries.
std::pair<std::string, std::string> divisor_config(const Args& a, const SurfaceInput& s) {
  std::string text, base;
  std::optional<std::string> file = a.config.empty() ? s.config() : std::optional<std::string>(a.config);
  if (file && a.config.empty() && (!a.lines.empty() || !a.f3.empty())) file.reset();
  if (file) {
    text = read_file(*file);
    base = fs::absolute(*file).parent_path().string();
  }
  for (const auto& l : a.lines) {
    auto colon = l.find(':');
    if (colon == std::string::npos) usage_error("--lines expects p:k");
    text += std::to_string(parse_prime_prefix(l.substr(0, colon), "--lines")) + " lines " + l.substr(colon + 1) + "\n";
  }
  for (const auto& f : a.f3) {
    auto c1 = f.find(':');
    if (c1 == std::string::npos) usage_error("--f3 expects p:path or p:path:k");
    std::uint32_t p = parse_prime_prefix(f.substr(0, c1), "--f3");
    std::string rest = f.substr(c1 + 1), degree = "3";
    auto c2 = rest.rfind(':');
    if (c2 != std::string::npos && rest.find_first_not_of("0123456789", c2 + 1) == std::string::npos) {
      degree = rest.substr(c2 + 1);
      rest = rest.substr(0, c2);
    }
    text += std::to_string(p) + " conics " + degree + " " + fs::absolute(rest).string() + "\n";
  }
  return {text, base};
}

std::string known_text(const Args& a) {
  std::string out;
  for (const auto& k : a.known) out += k + "\n";
  return out;
}

int cmd_count(const Args& a) {
  auto s = surface_input(a);
  auto surf = load_surface(s);
  if (a.primes.empty()) usage_error("--primes is required");
  auto o = options(a);
  for (std::size_t i = 0; i < a.primes.size(); ++i) {
    k3r_traces* t = nullptr;
    check(k3r_count(surf.get(), a.primes[i], nmax_for(a, i), &o, &t));
    TracesPtr hold(t, &k3r_traces_free);
    CString text;
    check(k3r_traces_text(t, &text.p));
    emit(text.str(), a.out);
  }
  return kExitOk;
}

// Traces for weil/tate: a file, the surface directory, or a fresh count.
TracesPtr traces_for_report(const Args& a) {
  std::optional<SurfaceInput> s;
  if (!a.surface.empty()) s = surface_input(a);
  if (a.primes.size() > 1) usage_error("weil and tate take a single prime");
  auto files = trace_files(a, s ? &*s : nullptr);
  if (!files.empty()) return load_traces(files.begin()->second, a.primes.empty() ? 0 : a.primes[0]);
  if (!s || a.primes.empty()) usage_error("give --traces, or --surface with --primes and --nmax");
  auto surf = load_surface(*s);
  auto o = options(a);
  k3r_traces* t = nullptr;
  check(k3r_count(surf.get(), a.primes[0], nmax_for(a, 0), &o, &t));
  return TracesPtr(t, &k3r_traces_free);
}

int cmd_weil(const Args& a, bool tate) {
  auto t = traces_for_report(a);
  CString text;
  auto known = known_text(a);
  if (tate) {
    check(k3r_tate_report(t.get(), known.c_str(), &text.p));
  } else {
    check(k3r_weil_report(t.get(), known.c_str(), &text.p));
  }
  emit(text.str(), a.out);
  return kExitOk;
}

int cmd_divisors(const Args& a) {
  auto s = surface_input(a);
  auto surf = load_surface(s);
  if (a.primes.empty()) usage_error("--primes is required");
  auto [config, base] = divisor_config(a, s);
  auto o = options(a);
  std::string all;
  for (auto p : a.primes) {
    CString text;
    check(k3r_divisors_report(surf.get(), p, config.c_str(), base.c_str(), &o, &text.p));
    all += (all.empty() ? "" : "\n") + text.str();
  }
  emit(all, a.out);
  return kExitOk;
}

int cmd_certify(const Args& a) {
  auto s = surface_input(a);
  auto surf = load_surface(s);
  if (a.primes.size() != 2) usage_error("certify needs --primes p1,p2");
  auto files = trace_files(a, &s);
  std::vector<TracesPtr> held;
  std::vector<k3r_prime_input> in;
  for (std::size_t i = 0; i < 2; ++i) {
    k3r_prime_input pi{a.primes[i], nmax_for(a, i), nullptr};
    if (auto it = files.find(a.primes[i]); it != files.end()) {
      held.push_back(load_traces(it->second, a.primes[i]));
      pi.traces = held.back().get();
    }
    in.push_back(pi);
  }
  auto [config, base] = divisor_config(a, s);
  auto o = options(a);
  CString cert;
  int proven = 0;
  check(k3r_certify(surf.get(), in.data(), in.size(), config.c_str(), base.c_str(), &o, &cert.p, &proven));
  emit(cert.str(), a.out);
  std::cerr << (proven ? "rank 1 proven\n" : "inconclusive\n");
  return proven ? kExitOk : kExitInconclusive;
}

int cmd_verify(const Args& a) {
  if (a.certificate.empty()) usage_error("a certificate file is required");
  std::string text = read_file(a.certificate);
  int proven = 0;
  CString report;
  k3r_status st = k3r_verify(text.c_str(), &proven, &report.p);
  if (st != K3R_OK) {
    std::cerr << "verification failed: " << k3r_last_error() << "\n";
    return kExitError;
  }
  emit(report.str(), a.out);
  std::cerr << (proven ? "certificate valid: rank 1 proven\n" : "certificate valid: inconclusive\n");
  return proven ? kExitOk : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k3rank: certify geometric Picard rank 1 for double-plane K3 surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(k3r_version()));
  Args a;
  if (const char* env = std::getenv(kCacheEnv)) a.cache_dir = env;

  auto common = [&](CLI::App* c, bool counting) {
    c->add_option("--surface", a.surface, "sextic file, or directory with surface.txt");
    c->add_option("--primes", a.primes, "comma-separated odd primes")->delimiter(',');
    if (counting) {
      c->add_option("--nmax", a.nmax, "largest n to count, one value or one per prime")->delimiter(',');
      c->add_option("--workers", a.workers, "counting threads")->check(CLI::Range(1u, 256u));
      c->add_option("--limit-override", a.limit_override, "raise the field-size limit (default 5^8)");
      c->add_option("--cache-dir", a.cache_dir, std::string("count cache directory (env ") + kCacheEnv + ")");
      c->add_option("--traces", a.traces, "trace file, or p:path")->delimiter(',');
    }
    c->add_option("--out", a.out, "write the result here instead of stdout");
  };
  auto divisor_flags = [&](CLI::App* c) {
    c->add_option("--seed", a.seed, "seed for polynomial factorization");
    c->add_option("--lines", a.lines, "search split lines over F_{p^k}, as p:k")->delimiter(',');
    c->add_option("--f3", a.f3, "conic triple from a cubic file, as p:path or p:path:k");
    c->add_option("--config", a.config, "divisor configuration file");
  };

  auto* count = app.add_subcommand("count", "point counts and traces");
  common(count, true);
  auto* weil = app.add_subcommand("weil", "reconstruct the Weil polynomial");
  common(weil, true);
  weil->add_option("--known", a.known, "known factor, coefficients highest first");
  auto* tate = app.add_subcommand("tate", "Tate factors and admissible Picard ranks");
  common(tate, true);
  tate->add_option("--known", a.known, "known factor, coefficients highest first");
  auto* divisors = app.add_subcommand("divisors", "split curves, Gram matrix and Frobenius action");
  common(divisors, false);
  divisor_flags(divisors);
  divisors->add_option("--workers", a.workers, "search threads")->check(CLI::Range(1u, 256u));
  divisors->add_option("--limit-override", a.limit_override, "raise the field-size limit (default 5^8)");
  auto* certify = app.add_subcommand("certify", "run both primes and write a certificate");
  common(certify, true);
  divisor_flags(certify);
  auto* verify = app.add_subcommand("verify", "re-check a certificate without counting");
  verify->add_option("certificate", a.certificate, "certificate file")->required();
  verify->add_option("--out", a.out, "write the check list here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*count) return cmd_count(a);
    if (*weil) return cmd_weil(a, false);
    if (*tate) return cmd_weil(a, true);
    if (*divisors) return cmd_divisors(a);
    if (*certify) return cmd_certify(a);
    if (*verify) return cmd_verify(a);
  } catch (const Failure& f) {
    std::cerr << "error (" << k3r_status_name(f.status) << "): " << f.message << "\n";
    return kExitError;
  }
  return kExitError;
}
