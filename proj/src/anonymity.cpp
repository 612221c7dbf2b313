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

#include "anonytope/anonymity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "anonytope/csv.hpp"
#include "anonytope/error.hpp"

namespace anonytope {

const char* FailureReasonName(FailureReason reason) {
  switch (reason) {
    case FailureReason::kNone:
      return "none";
    case FailureReason::kComponentTooSmall:
      return "component_too_small";
    case FailureReason::kComponentNotSimplex:
      return "component_not_simplex";
  }
  return "unknown";
}

std::size_t Regime::min_class_size() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& c : classes) m = std::min(m, c.size());
  return classes.empty() ? 0 : m;
}

namespace {

double ComponentRadius(const NormalizedDataset& data,
                       const std::vector<Vertex>& members) {
  if (members.size() == 1) return 0.0;
  if (members.size() == 2) {
    return PairRadius(data.points[members[0]], data.points[members[1]]);
  }
  std::vector<Point> pts;
  pts.reserve(members.size());
  for (Vertex v : members) pts.push_back(data.points[v]);
  return MinEnclosingBall(pts).radius;
}

}  // namespace

Partition ComponentsAt(const NormalizedDataset& data, double eps) {
  const std::size_t n = data.size();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (PairRadius(data.points[a], data.points[b]) <= eps) {
        Vertex ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::map<Vertex, std::vector<Vertex>> groups;
  for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
  Partition out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

AnonymityVerdict CheckKAnonymity(const NormalizedDataset& data, double eps,
                                 std::size_t k) {
  Require(k >= 1, "k must be at least 1");
  Require(eps >= 0.0, "eps must be nonnegative");
  AnonymityVerdict verdict;
  if (k > data.size()) {
    verdict.failure = FailureReason::kComponentTooSmall;
    verdict.failing_component.resize(data.size());
    std::iota(verdict.failing_component.begin(),
              verdict.failing_component.end(), Vertex{0});
    return verdict;
  }
  Partition components = ComponentsAt(data, eps);
  for (const auto& c : components) {
    if (c.size() < k) {
      verdict.failure = FailureReason::kComponentTooSmall;
      verdict.failing_component = c;
      return verdict;
    }
  }
  for (const auto& c : components) {
    if (ComponentRadius(data, c) > eps) {
      verdict.failure = FailureReason::kComponentNotSimplex;
      verdict.failing_component = c;
      return verdict;
    }
  }
  verdict.achieved = true;
  verdict.classes = std::move(components);
  return verdict;
}

std::vector<Regime> ComputeRegimes(const NormalizedDataset& data,
                                   std::size_t k) {
  return ComputeRegimes(data, WeightedH0Barcode(data), k);
}

std::vector<Regime> ComputeRegimes(const NormalizedDataset& data,
                                   const WeightedBarcode& h0, std::size_t k) {
  Require(k >= 1, "k must be at least 1");
  std::vector<Regime> regimes;
  if (k > data.size()) return regimes;
  std::map<std::vector<Vertex>, double> radius_cache;
  const auto& snaps = h0.snapshots;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const Partition& parts = snaps[i].components;
    const bool big_enough = std::all_of(
        parts.begin(), parts.end(),
        [k](const std::vector<Vertex>& c) { return c.size() >= k; });
    if (!big_enough) continue;
    double lo = snaps[i].eps;
    for (const auto& c : parts) {
      auto it = radius_cache.find(c);
      if (it == radius_cache.end()) {
        it = radius_cache.emplace(c, ComponentRadius(data, c)).first;
      }
      lo = std::max(lo, it->second);
    }
    std::optional<double> hi;
    if (i + 1 < snaps.size()) hi = snaps[i + 1].eps;
    if (hi && !(lo < *hi)) continue;
    regimes.push_back({lo, hi, parts});
  }
  return regimes;
}

MinimalGeneralization SelectRegime(const std::vector<Regime>& regimes,
                                   std::size_t k, Objective objective) {
  if (regimes.empty()) {
    Fail(ErrorCode::kInfeasible,
         "no generalization radius achieves " + std::to_string(k) +
             "-anonymity");
  }
  const Regime* best = &regimes.front();
  if (objective == Objective::kMaxClasses) {
    for (const Regime& r : regimes) {
      if (r.n_classes() > best->n_classes()) best = &r;
    }
  }
  return {best->eps_lo, *best};
}

MinimalGeneralization MinimalEpsilon(const NormalizedDataset& data,
                                     std::size_t k, Objective objective) {
  if (k > data.size()) {
    Fail(ErrorCode::kInfeasible, "k exceeds row count (" + std::to_string(k) +
                                     " > " + std::to_string(data.size()) +
                                     ")");
  }
  return SelectRegime(ComputeRegimes(data, k), k, objective);
}

std::vector<AnonymityVerdict> GridSweep(const NormalizedDataset& data,
                                        const std::vector<double>& grid,
                                        std::size_t k) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Require(grid[i - 1] < grid[i], "radii grid must be strictly increasing");
  }
  std::vector<AnonymityVerdict> out;
  out.reserve(grid.size());
  for (double eps : grid) out.push_back(CheckKAnonymity(data, eps, k));
  return out;
}

std::optional<Regime> NearestRegime(const std::vector<Regime>& regimes,
                                    double eps) {
  std::optional<Regime> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const Regime& r : regimes) {
    double gap = 0.0;
    if (eps < r.eps_lo) {
      gap = r.eps_lo - eps;
    } else if (r.eps_hi && eps >= *r.eps_hi) {
      gap = eps - *r.eps_hi;
    }
    if (gap < best_gap) {
      best_gap = gap;
      best = r;
    }
  }
  return best;
}

GeneralizedTable GeneralizeTable(const NumericTable& table,
                                 const NormalizedDataset& data,
                                 const Regime& regime,
                                 bool keep_other_columns) {
  const std::size_t n = data.size();
  Require(table.size() == n, "table and dataset row counts differ");
  GeneralizedTable out;
  const std::vector<std::size_t> quasi = table.QuasiColumns();
  for (std::size_t c : quasi) out.quasi_columns.push_back(table.columns[c]);
  out.rows.assign(n, {});
  out.class_id.assign(n, SIZE_MAX);
  for (std::size_t id = 0; id < regime.classes.size(); ++id) {
    const auto& members = regime.classes[id];
    std::vector<Interval> box(data.dims());
    for (std::size_t d = 0; d < data.dims(); ++d) {
      box[d].lo = box[d].hi = data.original[members.front()][d];
      for (Vertex v : members) {
        box[d].lo = std::min(box[d].lo, data.original[v][d]);
        box[d].hi = std::max(box[d].hi, data.original[v][d]);
      }
    }
    for (Vertex v : members) {
      Require(v < n && out.class_id[v] == SIZE_MAX,
              "regime classes do not partition the table rows");
      out.rows[v] = box;
      out.class_id[v] = id;
    }
  }
  for (std::size_t id : out.class_id) {
    Require(id != SIZE_MAX, "regime classes do not cover every table row");
  }
  if (keep_other_columns) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (table.roles[c] == ColumnRole::kQuasiIdentifier) continue;
      out.passthrough_columns.push_back(table.columns[c]);
    }
    for (const auto& row : table.rows) {
      std::vector<std::string> kept;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.roles[c] != ColumnRole::kQuasiIdentifier) {
          kept.push_back(row[c]);
        }
      }
      out.passthrough.push_back(std::move(kept));
    }
  }
  return out;
}

std::string FormatInterval(const Interval& interval) {
  if (interval.lo == interval.hi) return FormatDouble(interval.lo);
  return "[" + FormatDouble(interval.lo) + "-" + FormatDouble(interval.hi) +
         "]";
}

void WriteGeneralizedCsv(std::ostream& out, const GeneralizedTable& table) {
  std::vector<std::string> header = table.quasi_columns;
  header.insert(header.end(), table.passthrough_columns.begin(),
                table.passthrough_columns.end());
  WriteCsvRow(out, header);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> cells;
    for (const Interval& iv : table.rows[r]) cells.push_back(FormatInterval(iv));
    if (!table.passthrough.empty()) {
      cells.insert(cells.end(), table.passthrough[r].begin(),
                   table.passthrough[r].end());
    }
    WriteCsvRow(out, cells);
  }
}

}  // namespace anonytope
