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

// Rational plane curves whose preimage on the double plane splits into two
// components, and the intersection numbers between those components.
//
// Branch convention: on a curve parametrized by phi(s, t) with
// f6(phi) = c * h^2, h monic in the affine coordinate t/s, the "+" branch is
// w = s0 * h(s, t) where s0 is the canonical square root of c. w has weight
// 3, so a point (P, w) equals (mu P, mu^3 w).

#ifndef K3RANK_DIVISORS_HPP_
#define K3RANK_DIVISORS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3rank/forms.hpp"
#include "k3rank/surface.hpp"

namespace k3rank {

struct ParamCurve {
  FieldPtr field;
  std::array<BinaryForm, 3> param;  // all of degree 1 (line) or 2 (conic)
  TernaryForm plane;                // normalized defining form

  int degree() const { return plane.degree(); }
  Point3 at(const FElem& s, const FElem& t) const;
  // (s : t) with phi(s, t) proportional to p, and mu with phi(s, t) = mu p.
  struct Preimage {
    FElem s, t, mu;
  };
  Preimage invert(const Point3& p) const;
  ParamCurve mapped(const Embedding& emb) const;
};

// a x + b y + c z = 0 with a canonical parametrization:
// c != 0: (s, t, -(a s + b t)/c); else b != 0: (s, -a s/b, t); else (0, s, t).
ParamCurve line_curve(const FieldPtr& field, const FElem& a, const FElem& b, const FElem& c);
// Smooth conic Q, projected from the first rational point of a fixed scan
// onto a coordinate line that avoids that point.
ParamCurve conic_curve(const TernaryForm& q);

struct SplitData {
  BinaryForm h;  // monic, degree = g.degree / 2
  FElem c;       // g = c h^2
  FElem s;       // canonical square root of c
};

// g = c h^2 with c a square: every root on P^1, including (0:1), has even
// multiplicity and the leading coefficient is a square.
std::optional<SplitData> split_test(const BinaryForm& g);
std::optional<SplitData> split_test(const UniPoly& g);

struct SplitCurve {
  ParamCurve base;
  BinaryForm g;  // f6 composed with the parametrization
  SplitData split;
  int field_degree = 1;  // degree over F_p of the field of definition
  std::string label;
};

struct LineSearch {
  FieldPtr field;                    // F_{p^k}
  std::vector<SplitCurve> lines;     // grouped by Frobenius orbit
  std::vector<std::vector<int>> orbits;
  std::uint64_t lines_scanned = 0;
  std::uint64_t filter_survivors = 0;
};

// Every line over F_{p^k} whose pullback splits. Orbits are sorted by field
// degree, then by the canonical order of their first member; each orbit is
// listed as representative, Frob(rep), Frob^2(rep), ...
LineSearch find_split_lines(const SurfaceModel& model, unsigned k, unsigned workers = 1);
// Same result by direct split tests on every line. Oracle for small fields.
std::vector<ParamCurve> split_lines_exhaustive(const SurfaceModel& model, const FieldPtr& field);

struct ConicSystem {
  FieldPtr field;
  std::vector<TernaryForm> conics;  // normalized, Q_{i+1} = Frob(Q_i)
  FElem scale;                      // f6 - f3^2 = scale * Q_1 Q_2 Q_3
  std::vector<SplitCurve> curves;
};

// Recovers f6 - f3^2 = scale * Q1 Q2 Q3 over F_{p^k} from the restrictions to
// the coordinate lines and checks each step exactly. f3 lives over F_p.
ConicSystem verify_conic_system(const SurfaceModel& model, const TernaryForm& f3, unsigned k,
                                std::uint64_t seed = 0);

// H, or one of the two components over a split curve.
struct DivisorClass {
  int curve = -1;  // -1 for H
  int sign = 0;    // +1 or -1 for a component

  bool is_h() const { return curve < 0; }
  auto operator<=>(const DivisorClass&) const = default;
};

struct SystemOptions {
  // Largest field used for intersection points and Frobenius checks.
  std::uint64_t extension_limit = std::uint64_t{1} << 22;
  std::uint64_t seed = 0;
};

class SplitSystem {
 public:
  // All curves are moved into one field Omega through a single embedding
  // per input family, so the configuration stays Galois-consistent.
  SplitSystem(const SurfaceModel& model, const std::vector<std::vector<SplitCurve>>& families,
              const SystemOptions& options = {});

  const FieldPtr& field() const { return omega_; }
  const std::vector<SplitCurve>& curves() const { return curves_; }
  // H first, then (i, +1), (i, -1) for each curve.
  std::vector<DivisorClass> generators() const;
  std::string label(const DivisorClass& d) const;

  int intersection(const DivisorClass& a, const DivisorClass& b);
  std::vector<std::vector<long long>> gram(const std::vector<DivisorClass>& gens);
  // Image under the absolute Frobenius x -> x^p of the coordinates and w.
  DivisorClass frobenius(const DivisorClass& d);
  // Permutation of generators() induced by Frobenius.
  std::vector<int> frobenius_permutation();

  // C^2 + 2 C.C' + C'^2 = 2 d^2 and C_A.C_B + C_A.C_B' = d_A d_B.
  void check_invariants();

 private:
  using Counts = std::array<std::array<int, 2>, 2>;  // [sign a][sign b], index 0 = +
  const Counts& pair_counts(int i, int j);
  int curve_index(const TernaryForm& plane) const;

  std::uint32_t p_;
  FieldPtr omega_;
  SystemOptions options_;
  std::vector<SplitCurve> curves_;
  std::map<std::pair<int, int>, Counts> pair_cache_;
  std::map<DivisorClass, DivisorClass> frob_cache_;
};

}  // namespace k3rank

#endif  // K3RANK_DIVISORS_HPP_
