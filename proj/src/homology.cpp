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

#include "anonytope/homology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>

#include "anonytope/error.hpp"

namespace anonytope {

std::vector<Bar> Barcode::Displayed() const {
  std::vector<Bar> out;
  for (const Bar& b : bars) {
    if (!b.ZeroLength()) out.push_back(b);
  }
  return out;
}

std::size_t Barcode::BettiAt(int dim, double eps) const {
  return static_cast<std::size_t>(
      std::count_if(bars.begin(), bars.end(), [&](const Bar& b) {
        return b.dim == dim && b.Alive(eps);
      }));
}

std::size_t WeightedBar::WeightAt(double eps) const {
  if (!Alive(eps)) return 0;
  std::size_t w = 0;
  for (const WeightStep& s : steps) {
    if (s.eps > eps) break;
    w = s.weight;
  }
  return w;
}

const ComponentSnapshot& WeightedBarcode::SnapshotAt(double eps) const {
  Require(!snapshots.empty(), "weighted barcode has no snapshots");
  auto it = std::upper_bound(
      snapshots.begin(), snapshots.end(), eps,
      [](double e, const ComponentSnapshot& s) { return e < s.eps; });
  if (it == snapshots.begin()) return snapshots.front();
  return *std::prev(it);
}

BoundaryMatrix BuildBoundaryMatrix(const Filtration& filtration) {
  BoundaryMatrix matrix;
  matrix.columns.reserve(filtration.entries.size());
  matrix.dims.reserve(filtration.entries.size());
  std::map<std::vector<Vertex>, std::size_t> position;
  for (std::size_t i = 0; i < filtration.entries.size(); ++i) {
    const Simplex& s = filtration.entries[i].simplex;
    std::vector<std::size_t> column;
    for (const Simplex& f : s.Faces()) {
      auto it = position.find(f.vertices);
      if (it == position.end()) {
        Fail(ErrorCode::kFiltration,
             "entry " + std::to_string(i) + " appears before one of its faces");
      }
      column.push_back(it->second);
    }
    std::sort(column.begin(), column.end());
    position.emplace(s.vertices, i);
    matrix.columns.push_back(std::move(column));
    matrix.dims.push_back(s.dim());
  }
  return matrix;
}

namespace {

// Symmetric difference of two increasing index lists.
void AddColumn(std::vector<std::size_t>& target,
               const std::vector<std::size_t>& source) {
  std::vector<std::size_t> out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(),
                                source.end(), std::back_inserter(out));
  target.swap(out);
}

}  // namespace

PersistencePairs Reduce(const BoundaryMatrix& matrix) {
  const std::size_t n = matrix.columns.size();
  std::vector<std::vector<std::size_t>> reduced = matrix.columns;
  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> column_with_low(n, kNone);
  std::vector<bool> paired(n, false);
  PersistencePairs out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t>& col = reduced[j];
    while (!col.empty() && column_with_low[col.back()] != kNone) {
      AddColumn(col, reduced[column_with_low[col.back()]]);
    }
    if (!col.empty()) {
      column_with_low[col.back()] = j;
      out.pairs.emplace_back(col.back(), j);
      paired[col.back()] = paired[j] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!paired[i]) out.unpaired.push_back(i);
  }
  return out;
}

Barcode ComputeBarcode(const PersistencePairs& pairs,
                       const Filtration& filtration) {
  Barcode barcode;
  for (const FiltrationEntry& e : filtration.entries) {
    if (e.simplex.dim() == 0) ++barcode.n_points;
  }
  const auto& entries = filtration.entries;
  for (const auto& [creator, destroyer] : pairs.pairs) {
    barcode.bars.push_back({entries[creator].simplex.dim(),
                            entries[creator].birth, entries[destroyer].birth});
  }
  for (std::size_t i : pairs.unpaired) {
    // An unpaired top-dimension simplex is an artefact of the dimension cap.
    if (entries[i].simplex.dim() >= filtration.dim_cap) continue;
    barcode.bars.push_back(
        {entries[i].simplex.dim(), entries[i].birth, std::nullopt});
  }
  std::sort(barcode.bars.begin(), barcode.bars.end(),
            [](const Bar& a, const Bar& b) {
              const double da = a.death.value_or(HUGE_VAL);
              const double db = b.death.value_or(HUGE_VAL);
              return std::tie(a.dim, a.birth, da) < std::tie(b.dim, b.birth, db);
            });
  return barcode;
}

WeightedBarcode WeightedH0Barcode(const NormalizedDataset& data) {
  Require(data.size() >= 1, "weighted barcode needs at least one point");
  const std::size_t n = data.size();
  struct Edge {
    double radius;
    Vertex a, b;
  };
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      edges.push_back({PairRadius(data.points[a], data.points[b]), a, b});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.radius, x.a, x.b) < std::tie(y.radius, y.a, y.b);
  });

  WeightedBarcode out;
  out.n_points = n;
  out.h0_bars.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    out.h0_bars[v].representative = v;
    out.h0_bars[v].steps.push_back({0.0, 1});
  }
  // Roots are always the smallest member, so the elder rule is root order.
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  std::vector<std::size_t> size(n, 1);
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto snapshot = [&](double eps) {
    std::map<Vertex, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
    ComponentSnapshot s{eps, {}};
    for (auto& [root, members] : groups) s.components.push_back(members);
    out.snapshots.push_back(std::move(s));
  };

  std::size_t i = 0;
  auto merge_at = [&](double eps) {
    bool merged = false;
    for (; i < edges.size() && edges[i].radius == eps; ++i) {
      Vertex ra = find(edges[i].a);
      Vertex rb = find(edges[i].b);
      if (ra == rb) continue;
      if (rb < ra) std::swap(ra, rb);
      parent[rb] = ra;
      size[ra] += size[rb];
      out.h0_bars[rb].death = eps;
      std::vector<WeightStep>& steps = out.h0_bars[ra].steps;
      if (steps.back().eps == eps) {
        steps.back().weight = size[ra];
      } else {
        steps.push_back({eps, size[ra]});
      }
      merged = true;
    }
    return merged;
  };
  // Duplicate points merge at radius 0, inside the initial snapshot.
  merge_at(0.0);
  snapshot(0.0);
  while (i < edges.size() && out.snapshots.back().components.size() > 1) {
    const double eps = edges[i].radius;
    if (merge_at(eps)) snapshot(eps);
  }
  return out;
}

namespace {

// Rank over GF(2) of the given columns, each a list of row indices.
std::size_t Rank(const std::vector<std::vector<std::size_t>>& columns,
                 std::size_t n_rows) {
  const std::size_t words = (n_rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(columns.size());
  for (const auto& col : columns) {
    std::vector<std::uint64_t> bits(words, 0);
    for (std::size_t r : col) bits[r / 64] ^= std::uint64_t{1} << (r % 64);
    rows.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < n_rows && rank < rows.size(); ++bit) {
    const std::size_t w = bit / 64;
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][w] & mask) {
        for (std::size_t x = w; x < words; ++x) rows[r][x] ^= rows[rank][x];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::size_t> HomologyDimsAt(const SimplicialComplex& complex) {
  const int cap = complex.dim_cap;
  std::vector<std::map<std::vector<Vertex>, std::size_t>> index(cap + 1);
  for (const Simplex& s : complex.simplices) {
    if (s.dim() <= cap) {
      auto& level = index[s.dim()];
      level.emplace(s.vertices, level.size());
    }
  }
  // rank_boundary[n] = rank of the boundary map from n-chains to (n-1)-chains.
  std::vector<std::size_t> rank_boundary(cap + 2, 0);
  for (int n = 1; n <= cap; ++n) {
    std::vector<std::vector<std::size_t>> columns;
    for (const auto& [vertices, pos] : index[n]) {
      std::vector<std::size_t> col;
      for (const Simplex& f : Simplex{vertices}.Faces()) {
        auto it = index[n - 1].find(f.vertices);
        Require(it != index[n - 1].end(), "complex is not downward closed");
        col.push_back(it->second);
      }
      columns.push_back(std::move(col));
    }
    rank_boundary[n] = Rank(columns, index[n - 1].size());
  }
  std::vector<std::size_t> betti;
  for (int n = 0; n < cap; ++n) {
    const std::size_t cycles = index[n].size() - rank_boundary[n];
    betti.push_back(cycles - rank_boundary[n + 1]);
  }
  return betti;
}

}  // namespace anonytope
