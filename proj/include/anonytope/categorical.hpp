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

#ifndef ANONYTOPE_CATEGORICAL_HPP_
#define ANONYTOPE_CATEGORICAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anonytope/anonymity.hpp"
#include "anonytope/homology.hpp"

namespace anonytope {

// Per-attribute generalization hierarchy. Leaves sit at level 0 and the root
// at level height(); generalizing a leaf to level s returns its s-th ancestor.
class GeneralizationTree {
 public:
  using ChildList = std::vector<std::pair<std::string, std::vector<std::string>>>;

  // Records the structure as given. Call Validate() before use; every other
  // accessor assumes a valid tree.
  GeneralizationTree(std::string attribute, std::string root,
                     const ChildList& children);

  // Empty when the tree is well formed. Reports multiple roots, nodes with
  // two parents, nodes not reachable from the root, and leaves whose depth
  // differs from the height (level gaps).
  std::vector<std::string> Validate() const;

  const std::string& attribute() const { return attribute_; }
  const std::string& root() const { return root_; }
  int height() const { return height_; }
  bool IsLeaf(const std::string& value) const;
  std::vector<std::string> Leaves() const;

  // Throws kInput for an unknown leaf, kContract for a level out of range.
  const std::string& Generalize(const std::string& leaf, int level) const;

 private:
  std::string attribute_;
  std::string root_;
  std::map<std::string, std::vector<std::string>> parents_;
  std::map<std::string, std::vector<std::string>> children_;
  std::vector<std::string> declared_;
  int height_ = 0;
};

// Throws kInput listing every violation when the tree is malformed.
void RequireValid(const GeneralizationTree& tree);

using Levels = std::vector<int>;
using CategoricalRow = std::vector<std::string>;

struct GeneralizationLattice {
  std::vector<int> heights;
  std::vector<Levels> nodes;  // lexicographic
  // (from, to) node indices where `to` raises one coordinate of `from` by 1.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t IndexOf(const Levels& levels) const;
};

GeneralizationLattice BuildLattice(
    const std::vector<GeneralizationTree>& trees);

// Checks each cell is a leaf of its attribute's tree; throws kInput naming
// the first offending row and column.
void ValidateRows(const std::vector<CategoricalRow>& rows,
                  const std::vector<GeneralizationTree>& trees);

// Rows grouped by identical generalized tuple at the given levels. Classes
// are ordered by their smallest row.
Partition GeneralizedPartitionAt(const std::vector<CategoricalRow>& rows,
                                 const std::vector<GeneralizationTree>& trees,
                                 const Levels& levels);

struct ChainNodeReport {
  Levels levels;
  Partition classes;
  bool k_anonymous = false;
};

struct ChainReport {
  std::string name;
  std::vector<ChainNodeReport> nodes;
  std::optional<std::size_t> first_k_anonymous;  // index into nodes
  // H0 bars over the path index: one per row, born at 0.
  std::vector<WeightedBar> h0_bars;
};

// Path raising the last attribute fully first, then the one before, ...
std::vector<Levels> LowerChain(const std::vector<int>& heights);
// Path raising the first attribute fully first, then the next, ...
std::vector<Levels> UpperChain(const std::vector<int>& heights);

ChainReport ChainSweep(const std::vector<CategoricalRow>& rows,
                       const std::vector<GeneralizationTree>& trees,
                       const std::vector<Levels>& path, std::size_t k,
                       std::string name = "chain");

enum class SearchStrategy { kLowerThenUpper, kExhaustive };

struct LatticeSearchResult {
  SearchStrategy strategy = SearchStrategy::kLowerThenUpper;
  std::vector<ChainReport> chains;
  // Exhaustive: every lattice node in lexicographic order.
  std::vector<ChainNodeReport> evaluated;
  std::vector<Levels> minimal_nodes;
  bool upper_chain_computed = false;
  // False when the chain approximation found nothing; that outcome does not
  // prove k-anonymity is unreachable.
  bool conclusive = true;
  std::string note;
};

LatticeSearchResult LatticeSearch(const std::vector<CategoricalRow>& rows,
                                  const std::vector<GeneralizationTree>& trees,
                                  std::size_t k, SearchStrategy strategy,
                                  unsigned threads = 1);

}  // namespace anonytope

#endif  // ANONYTOPE_CATEGORICAL_HPP_
