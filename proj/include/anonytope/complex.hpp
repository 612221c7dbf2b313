//
// Copyright 2026 The Anonytope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONYTOPE_COMPLEX_HPP_
#define ANONYTOPE_COMPLEX_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "anonytope/geometry.hpp"

namespace anonytope {

using Vertex = std::uint32_t;

// A simplex on zero-based row indices. `vertices` is strictly increasing.
struct Simplex {
  std::vector<Vertex> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  // Codimension-one faces in lexicographic order.
  std::vector<Simplex> Faces() const;

  auto operator<=>(const Simplex&) const = default;
};

struct SimplicialComplex {
  std::set<Simplex> simplices;
  int dim_cap = 2;

  std::size_t CountOfDim(int dim) const;
  bool Contains(const Simplex& s) const { return simplices.count(s) > 0; }
};

struct FiltrationEntry {
  Simplex simplex;
  double birth = 0.0;
};

// Simplices sorted by (birth, dim, vertices); every face precedes its cofaces.
struct Filtration {
  std::vector<FiltrationEntry> entries;
  int dim_cap = 2;

  // Complex made of every entry born at or before eps.
  SimplicialComplex SublevelComplex(double eps) const;
  // Distinct birth values in increasing order.
  std::vector<double> CriticalValues() const;
};

struct FiltrationOptions {
  int dim_cap = 2;
  // Upper bound on the number of top-dimensional candidate simplices.
  std::uint64_t max_simplices = 20'000'000;
  unsigned threads = 1;
};

SimplicialComplex BuildAnonymityComplex(const NormalizedDataset& data,
                                        double eps, int dim_cap);

Filtration BuildFiltration(const NormalizedDataset& data,
                           const FiltrationOptions& options = {});

// Whether the rows in `subset` are at least k points whose eps-balls share a
// common point.
bool IsAnonymitySimplex(const NormalizedDataset& data,
                        const std::vector<std::size_t>& subset, double eps,
                        std::size_t k);

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k);

// Line format: `birth v0 v1 ... vk` with one-based vertices and the birth
// printed in shortest round-trip form, so Write/Read is lossless.
void WriteFiltration(std::ostream& out, const Filtration& filtration);
Filtration ReadFiltration(std::istream& in);
std::string FormatDouble(double value);

}  // namespace anonytope

#endif  // ANONYTOPE_COMPLEX_HPP_
