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

#include "anonytope/categorical.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "anonytope/error.hpp"
#include "anonytope/parallel.hpp"

namespace anonytope {

GeneralizationTree::GeneralizationTree(std::string attribute, std::string root,
                                       const ChildList& children)
    : attribute_(std::move(attribute)), root_(std::move(root)) {
  std::set<std::string> seen;
  auto declare = [&](const std::string& name) {
    if (seen.insert(name).second) declared_.push_back(name);
  };
  declare(root_);
  for (const auto& [parent, kids] : children) {
    declare(parent);
    for (const std::string& kid : kids) {
      declare(kid);
      children_[parent].push_back(kid);
      parents_[kid].push_back(parent);
    }
  }
  // Height is the depth of the deepest node reachable from the root.
  std::map<std::string, int> depth{{root_, 0}};
  std::deque<std::string> queue{root_};
  while (!queue.empty()) {
    const std::string node = queue.front();
    queue.pop_front();
    height_ = std::max(height_, depth[node]);
    auto it = children_.find(node);
    if (it == children_.end()) continue;
    for (const std::string& kid : it->second) {
      if (depth.emplace(kid, depth[node] + 1).second) queue.push_back(kid);
    }
  }
}

std::vector<std::string> GeneralizationTree::Validate() const {
  std::vector<std::string> errors;
  const std::string where = "tree '" + attribute_ + "': ";
  if (parents_.count(root_)) {
    errors.push_back(where + "root '" + root_ + "' has a parent");
  }
  for (const std::string& name : declared_) {
    auto it = parents_.find(name);
    if (name != root_ && it == parents_.end()) {
      errors.push_back(where + "node '" + name +
                       "' has no parent (multiple roots)");
    } else if (it != parents_.end() && it->second.size() > 1) {
      errors.push_back(where + "node '" + name + "' has " +
                       std::to_string(it->second.size()) + " parents");
    }
  }
  std::map<std::string, int> depth{{root_, 0}};
  std::deque<std::string> queue{root_};
  while (!queue.empty()) {
    const std::string node = queue.front();
    queue.pop_front();
    auto it = children_.find(node);
    if (it == children_.end()) continue;
    for (const std::string& kid : it->second) {
      if (depth.emplace(kid, depth[node] + 1).second) queue.push_back(kid);
    }
  }
  for (const std::string& name : declared_) {
    auto d = depth.find(name);
    if (d == depth.end()) {
      errors.push_back(where + "node '" + name +
                       "' is not reachable from the root");
    } else if (!children_.count(name) && d->second != height_) {
      errors.push_back(where + "level gap: leaf '" + name + "' at depth " +
                       std::to_string(d->second) + ", tree height is " +
                       std::to_string(height_));
    }
  }
  return errors;
}

void RequireValid(const GeneralizationTree& tree) {
  const std::vector<std::string> errors = tree.Validate();
  if (errors.empty()) return;
  std::string message = "invalid generalization tree";
  for (const std::string& e : errors) message += "\n  " + e;
  Fail(ErrorCode::kInput, message);
}

bool GeneralizationTree::IsLeaf(const std::string& value) const {
  if (value == root_) return height_ == 0;
  return parents_.count(value) && !children_.count(value);
}

std::vector<std::string> GeneralizationTree::Leaves() const {
  std::vector<std::string> out;
  for (const std::string& name : declared_) {
    if (IsLeaf(name)) out.push_back(name);
  }
  return out;
}

const std::string& GeneralizationTree::Generalize(const std::string& leaf,
                                                  int level) const {
  if (!IsLeaf(leaf)) {
    Fail(ErrorCode::kInput,
         "'" + leaf + "' is not a leaf of tree '" + attribute_ + "'");
  }
  Require(level >= 0 && level <= height_,
          "level " + std::to_string(level) + " outside [0, " +
              std::to_string(height_) + "] for tree '" + attribute_ + "'");
  auto it = parents_.find(leaf);
  const std::string* node = it == parents_.end() ? &root_ : &it->first;
  for (int s = 0; s < level; ++s) node = &parents_.at(*node).front();
  return *node;
}

std::size_t GeneralizationLattice::IndexOf(const Levels& levels) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), levels);
  Require(it != nodes.end() && *it == levels, "levels not in the lattice");
  return static_cast<std::size_t>(it - nodes.begin());
}

GeneralizationLattice BuildLattice(
    const std::vector<GeneralizationTree>& trees) {
  Require(!trees.empty(), "lattice needs at least one tree");
  GeneralizationLattice lattice;
  for (const auto& t : trees) lattice.heights.push_back(t.height());
  Levels current(trees.size(), 0);
  while (true) {
    lattice.nodes.push_back(current);
    std::size_t i = current.size();
    while (i > 0 && current[i - 1] == lattice.heights[i - 1]) {
      current[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++current[i - 1];
  }
  for (std::size_t from = 0; from < lattice.nodes.size(); ++from) {
    for (std::size_t attr = 0; attr < trees.size(); ++attr) {
      Levels up = lattice.nodes[from];
      if (up[attr] == lattice.heights[attr]) continue;
      ++up[attr];
      lattice.edges.emplace_back(from, lattice.IndexOf(up));
    }
  }
  return lattice;
}

void ValidateRows(const std::vector<CategoricalRow>& rows,
                  const std::vector<GeneralizationTree>& trees) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != trees.size()) {
      Fail(ErrorCode::kInput, "row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) +
                                  " attributes, expected " +
                                  std::to_string(trees.size()));
    }
    for (std::size_t c = 0; c < trees.size(); ++c) {
      if (!trees[c].IsLeaf(rows[r][c])) {
        Fail(ErrorCode::kInput, "row " + std::to_string(r + 1) +
                                    ", column '" + trees[c].attribute() +
                                    "': '" + rows[r][c] +
                                    "' is not a leaf of its tree");
      }
    }
  }
}

Partition GeneralizedPartitionAt(const std::vector<CategoricalRow>& rows,
                                 const std::vector<GeneralizationTree>& trees,
                                 const Levels& levels) {
  Require(levels.size() == trees.size(), "levels do not match the trees");
  std::map<std::vector<std::string>, std::size_t> class_of;
  Partition classes;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> key;
    key.reserve(trees.size());
    for (std::size_t c = 0; c < trees.size(); ++c) {
      key.push_back(trees[c].Generalize(rows[r][c], levels[c]));
    }
    auto [it, fresh] = class_of.emplace(std::move(key), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(static_cast<Vertex>(r));
  }
  return classes;
}

namespace {

std::vector<Levels> MonotonePath(const std::vector<int>& heights,
                                 const std::vector<std::size_t>& order) {
  Levels current(heights.size(), 0);
  std::vector<Levels> path{current};
  for (std::size_t attr : order) {
    while (current[attr] < heights[attr]) {
      ++current[attr];
      path.push_back(current);
    }
  }
  return path;
}

bool AllAtLeast(const Partition& classes, std::size_t k) {
  return std::all_of(classes.begin(), classes.end(),
                     [k](const std::vector<Vertex>& c) { return c.size() >= k; });
}

}  // namespace

std::vector<Levels> LowerChain(const std::vector<int>& heights) {
  std::vector<std::size_t> order(heights.size());
  std::iota(order.rbegin(), order.rend(), std::size_t{0});
  return MonotonePath(heights, order);
}

std::vector<Levels> UpperChain(const std::vector<int>& heights) {
  std::vector<std::size_t> order(heights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return MonotonePath(heights, order);
}

ChainReport ChainSweep(const std::vector<CategoricalRow>& rows,
                       const std::vector<GeneralizationTree>& trees,
                       const std::vector<Levels>& path, std::size_t k,
                       std::string name) {
  Require(k >= 1, "k must be at least 1");
  Require(!path.empty(), "chain needs at least one node");
  for (std::size_t j = 1; j < path.size(); ++j) {
    Require(path[j].size() == path[j - 1].size(),
            "chain nodes have different arity");
    int raised = 0;
    bool monotone = true;
    for (std::size_t a = 0; a < path[j].size(); ++a) {
      const int step = path[j][a] - path[j - 1][a];
      if (step == 1) {
        ++raised;
      } else if (step != 0) {
        monotone = false;
      }
    }
    Require(monotone && raised == 1,
            "chain is not monotone at step " + std::to_string(j));
  }
  ValidateRows(rows, trees);

  ChainReport report;
  report.name = std::move(name);
  const std::size_t n = rows.size();
  report.h0_bars.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    report.h0_bars[r].representative = static_cast<Vertex>(r);
    report.h0_bars[r].steps.push_back({0.0, 1});
  }
  for (std::size_t j = 0; j < path.size(); ++j) {
    ChainNodeReport node{path[j], GeneralizedPartitionAt(rows, trees, path[j]),
                         false};
    node.k_anonymous = n >= k && AllAtLeast(node.classes, k);
    if (node.k_anonymous && !report.first_k_anonymous) {
      report.first_k_anonymous = j;
    }
    // Elder rule: each class is represented by its smallest row; every other
    // row still alive in the class dies here.
    const double index = static_cast<double>(j);
    for (const auto& members : node.classes) {
      WeightedBar& survivor = report.h0_bars[members.front()];
      for (std::size_t m = 1; m < members.size(); ++m) {
        WeightedBar& bar = report.h0_bars[members[m]];
        if (!bar.death) bar.death = index;
      }
      if (survivor.steps.back().weight != members.size()) {
        if (survivor.steps.back().eps == index) {
          survivor.steps.back().weight = members.size();
        } else {
          survivor.steps.push_back({index, members.size()});
        }
      }
    }
    report.nodes.push_back(std::move(node));
  }
  return report;
}

LatticeSearchResult LatticeSearch(const std::vector<CategoricalRow>& rows,
                                  const std::vector<GeneralizationTree>& trees,
                                  std::size_t k, SearchStrategy strategy,
                                  unsigned threads) {
  Require(k >= 1, "k must be at least 1");
  for (const auto& t : trees) RequireValid(t);
  ValidateRows(rows, trees);
  LatticeSearchResult result;
  result.strategy = strategy;
  std::vector<int> heights;
  for (const auto& t : trees) heights.push_back(t.height());

  if (strategy == SearchStrategy::kLowerThenUpper) {
    result.chains.push_back(
        ChainSweep(rows, trees, LowerChain(heights), k, "lower"));
    const ChainReport& lower = result.chains.back();
    if (lower.first_k_anonymous) {
      result.minimal_nodes.push_back(
          lower.nodes[*lower.first_k_anonymous].levels);
      result.note = "k-anonymity reached on the lower chain; upper chain "
                    "not computed";
      return result;
    }
    result.upper_chain_computed = true;
    result.chains.push_back(
        ChainSweep(rows, trees, UpperChain(heights), k, "upper"));
    const ChainReport& upper = result.chains.back();
    if (upper.first_k_anonymous) {
      result.minimal_nodes.push_back(
          upper.nodes[*upper.first_k_anonymous].levels);
      result.note = "k-anonymity not reached on the lower chain; reached on "
                    "the upper chain";
      return result;
    }
    result.conclusive = false;
    result.note = "k-anonymity reached on neither chain; this does not prove "
                  "that no generalization achieves it";
    return result;
  }

  const GeneralizationLattice lattice = BuildLattice(trees);
  result.evaluated.resize(lattice.nodes.size());
  ParallelFor(lattice.nodes.size(), threads, [&](std::size_t i) {
    Partition classes = GeneralizedPartitionAt(rows, trees, lattice.nodes[i]);
    const bool ok = rows.size() >= k && AllAtLeast(classes, k);
    result.evaluated[i] = {lattice.nodes[i], std::move(classes), ok};
  });
  int best = -1;
  for (const auto& node : result.evaluated) {
    if (!node.k_anonymous) continue;
    const int sum = std::accumulate(node.levels.begin(), node.levels.end(), 0);
    if (best < 0 || sum < best) {
      best = sum;
      result.minimal_nodes.clear();
    }
    if (sum == best) result.minimal_nodes.push_back(node.levels);
  }
  if (result.minimal_nodes.empty()) {
    result.note = "no lattice node is k-anonymous";
  } else {
    result.note = "exhaustive search over all lattice nodes";
  }
  return result;
}

}  // namespace anonytope
