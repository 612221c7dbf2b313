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

#ifndef ANONYTOPE_ANONYMITY_HPP_
#define ANONYTOPE_ANONYMITY_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anonytope/complex.hpp"
#include "anonytope/geometry.hpp"
#include "anonytope/homology.hpp"

namespace anonytope {

using Partition = std::vector<std::vector<Vertex>>;

enum class FailureReason { kNone, kComponentTooSmall, kComponentNotSimplex };

const char* FailureReasonName(FailureReason reason);

struct AnonymityVerdict {
  bool achieved = false;
  // Equivalence classes; empty unless achieved.
  Partition classes;
  FailureReason failure = FailureReason::kNone;
  std::vector<Vertex> failing_component;
};

// Maximal half-open eps interval on which k-anonymity holds with one fixed
// partition. `eps_hi` is unset for the final, unbounded regime.
struct Regime {
  double eps_lo = 0.0;
  std::optional<double> eps_hi;
  Partition classes;

  std::size_t n_classes() const { return classes.size(); }
  std::size_t min_class_size() const;
  bool Contains(double eps) const {
    return eps_lo <= eps && (!eps_hi || eps < *eps_hi);
  }
};

enum class Objective { kSmallestEps, kMaxClasses };

struct MinimalGeneralization {
  double eps = 0.0;
  Regime regime;
};

// Connected components of the graph joining rows within 2 * eps.
Partition ComponentsAt(const NormalizedDataset& data, double eps);

// k-anonymity at radius eps: every component has at least k rows and its
// rows fit inside one eps-ball, so the component is a full simplex.
AnonymityVerdict CheckKAnonymity(const NormalizedDataset& data, double eps,
                                 std::size_t k);

// Exact sweep over the merge values of the H0 barcode and the enclosing
// radii of the components that appear. Empty when k exceeds the row count.
std::vector<Regime> ComputeRegimes(const NormalizedDataset& data,
                                   std::size_t k);
std::vector<Regime> ComputeRegimes(const NormalizedDataset& data,
                                   const WeightedBarcode& h0, std::size_t k);

// Throws kInfeasible when no regime exists.
MinimalGeneralization MinimalEpsilon(const NormalizedDataset& data,
                                     std::size_t k, Objective objective);
MinimalGeneralization SelectRegime(const std::vector<Regime>& regimes,
                                   std::size_t k, Objective objective);

// Fixed-radius evaluation at each grid value; grid must be increasing.
std::vector<AnonymityVerdict> GridSweep(const NormalizedDataset& data,
                                        const std::vector<double>& grid,
                                        std::size_t k);

// Regime closest to eps (distance from eps to the interval), if any.
std::optional<Regime> NearestRegime(const std::vector<Regime>& regimes,
                                    double eps);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneralizedTable {
  std::vector<std::string> quasi_columns;
  std::vector<std::vector<Interval>> rows;
  std::vector<std::size_t> class_id;
  // Non-quasi columns carried verbatim when requested.
  std::vector<std::string> passthrough_columns;
  std::vector<std::vector<std::string>> passthrough;
};

GeneralizedTable GeneralizeTable(const NumericTable& table,
                                 const NormalizedDataset& data,
                                 const Regime& regime,
                                 bool keep_other_columns = false);

// "[lo-hi]" or the bare value when lo == hi.
std::string FormatInterval(const Interval& interval);

void WriteGeneralizedCsv(std::ostream& out, const GeneralizedTable& table);

}  // namespace anonytope

#endif  // ANONYTOPE_ANONYMITY_HPP_
