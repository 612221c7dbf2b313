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

#ifndef ANONYTOPE_HOMOLOGY_HPP_
#define ANONYTOPE_HOMOLOGY_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "anonytope/complex.hpp"
#include "anonytope/geometry.hpp"

namespace anonytope {

// Boundary operator over GF(2): column i lists the filtration positions of
// the codimension-one faces of entry i, increasing.
struct BoundaryMatrix {
  std::vector<std::vector<std::size_t>> columns;
  std::vector<int> dims;
};

struct PersistencePairs {
  // (creator position, destroyer position)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unpaired;
};

struct Bar {
  int dim = 0;
  double birth = 0.0;
  std::optional<double> death;  // nullopt is +infinity

  bool Alive(double eps) const {
    return birth <= eps && (!death || eps < *death);
  }
  bool ZeroLength() const { return death && *death == birth; }
};

struct Barcode {
  std::vector<Bar> bars;
  std::size_t n_points = 0;

  // Bars with positive length, for rendering.
  std::vector<Bar> Displayed() const;
  // Number of bars of `dim` alive at eps, i.e. the Betti number there.
  std::size_t BettiAt(int dim, double eps) const;
};

struct WeightStep {
  double eps = 0.0;
  std::size_t weight = 1;
};

// An H0 bar carrying the size of the component it represents. Bars die by
// the elder rule: on a merge the component with the smaller oldest row
// survives and absorbs the other's members.
struct WeightedBar {
  Vertex representative = 0;
  double birth = 0.0;
  std::optional<double> death;
  std::vector<WeightStep> steps;

  bool Alive(double eps) const {
    return birth <= eps && (!death || eps < *death);
  }
  std::size_t WeightAt(double eps) const;
};

struct ComponentSnapshot {
  double eps = 0.0;
  // Components ordered by smallest member; members increasing.
  std::vector<std::vector<Vertex>> components;
};

struct WeightedBarcode {
  std::vector<WeightedBar> h0_bars;
  // Partition after all merges at each critical value, starting at eps = 0.
  std::vector<ComponentSnapshot> snapshots;
  std::size_t n_points = 0;

  // Partition in force at eps (the last snapshot at or below eps).
  const ComponentSnapshot& SnapshotAt(double eps) const;
};

BoundaryMatrix BuildBoundaryMatrix(const Filtration& filtration);

// Left-to-right column reduction with low-index pairing.
PersistencePairs Reduce(const BoundaryMatrix& matrix);

Barcode ComputeBarcode(const PersistencePairs& pairs,
                       const Filtration& filtration);

inline Barcode PersistentHomology(const Filtration& filtration) {
  return ComputeBarcode(Reduce(BuildBoundaryMatrix(filtration)), filtration);
}

WeightedBarcode WeightedH0Barcode(const NormalizedDataset& data);

// dim H_n for n = 0 .. dim_cap - 1 by rank-nullity over GF(2).
std::vector<std::size_t> HomologyDimsAt(const SimplicialComplex& complex);

}  // namespace anonytope

#endif  // ANONYTOPE_HOMOLOGY_HPP_
