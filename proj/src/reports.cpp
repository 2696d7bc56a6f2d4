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

#include "k3rank/reports.hpp"

#include <numeric>
#include <sstream>

#include "k3rank/lattice.hpp"
#include "k3rank/linalg.hpp"
#include "k3rank/tate.hpp"

namespace k3rank {

std::string weil_report(const WeilPolynomial& w, const ReconstructReport& rep) {
  std::ostringstream os;
  os << "q: " << w.q << "\n";
  os << "epsilon: " << (w.epsilon > 0 ? "+1" : "-1") << "\n";
  os << "phi: " << w.poly().to_string() << "\n";
  os << "coefficients:";
  for (const auto& c : w.a) os << " " << c;
  os << "\n";
  os << "traces.used: " << rep.traces_used << "\n";
  os << "traces.checked: " << rep.traces_checked << "\n";
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string tate_report(const WeilPolynomial& w) {
  auto tate = tate_split(w);
  auto adm = admissible_dimensions(tate, {ZPoly::linear(w.q)});
  std::ostringstream os;
  os << "tate.dimension: " << tate.tate_dimension << "\n";
  for (const auto& f : tate.factors) {
    os << "factor: Phi_" << f.n << " multiplicity " << f.multiplicity << ": " << f.poly.to_string() << "\n";
  }
  os << "remainder: " << tate.remainder.to_string() << "\n";
  os << "admissible.dims:";
  for (int d : adm.dims) os << " " << d;
  os << "\n";
  for (const auto& c : adm.candidates) os << "candidate: " << c.dimension << ": " << c.charpoly.to_string() << "\n";
  return os.str();
}

std::string divisors_report(std::uint32_t p, const DivisorInventory& inv, const std::vector<std::string>& notes) {
  std::ostringstream os;
  os << "p: " << p << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  for (const auto& c : inv.curves) os << "curve: " << c << "\n";
  os << "generators:";
  for (const auto& l : inv.labels) os << " " << l;
  os << "\n";
  auto rows = [&os](const char* key, const ZMatrix& g) {
    for (const auto& row : g) {
      os << key << ":";
      for (const auto& v : row) os << " " << v;
      os << "\n";
    }
  };
  rows("gram", inv.gram);
  os << "frobenius:";
  for (int i : inv.frobenius) os << " " << i;
  os << "\n";
  os << "rank: " << inv.lattice.rank << "\n";
  os << "det: " << inv.lattice.det << "\n";
  os << "class: " << square_class(inv.lattice.det) << "\n";
  os << "signature: (" << inv.lattice.positive << ", " << inv.lattice.negative << ")\n";
  os << "charpoly: " << inv.charpoly.to_string() << "\n";
  // A basis made of curve components alone, without H.
  if (inv.labels.size() > 1) {
    std::vector<int> comps(inv.labels.size() - 1);
    std::iota(comps.begin(), comps.end(), 1);
    auto info = analyze_gram(submatrix(inv.gram, comps));
    os << "components.basis:";
    for (int i : info.basis) os << " " << inv.labels[comps[i]];
    os << "\n";
    rows("components.gram", info.basis_gram);
    os << "components.det: " << info.basis_det << "\n";
    os << "components.class: " << square_class(info.basis_det) << "\n";
  }
  // One branch per curve; generators come as H, C1+, C1-, C2+, ...
  const std::size_t curves = (inv.labels.size() - 1) / 2;
  if (curves >= 1 && curves <= 4) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << curves); ++mask) {
      std::vector<int> idx;
      for (std::size_t c = 0; c < curves; ++c) idx.push_back(static_cast<int>(1 + 2 * c + (mask >> c & 1)));
      ZMatrix g = submatrix(inv.gram, idx);
      os << "labeling:";
      for (int i : idx) os << " " << inv.labels[i];
      os << " det " << bareiss_det(g) << "\n";
    }
  }
  return os.str();
}

}  // namespace k3rank
