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

#include "anonytope/complex.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "anonytope/error.hpp"
#include "anonytope/parallel.hpp"

namespace anonytope {

std::vector<Simplex> Simplex::Faces() const {
  std::vector<Simplex> faces;
  if (vertices.size() < 2) return faces;
  faces.reserve(vertices.size());
  // Dropping the last vertex first yields lexicographic order.
  for (std::size_t drop = vertices.size(); drop-- > 0;) {
    Simplex face;
    face.vertices.reserve(vertices.size() - 1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i != drop) face.vertices.push_back(vertices[i]);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

std::size_t SimplicialComplex::CountOfDim(int dim) const {
  return static_cast<std::size_t>(
      std::count_if(simplices.begin(), simplices.end(),
                    [dim](const Simplex& s) { return s.dim() == dim; }));
}

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

double Radius(const NormalizedDataset& data, const Simplex& s) {
  if (s.vertices.size() == 1) return 0.0;
  if (s.vertices.size() == 2) {
    return PairRadius(data.points[s.vertices[0]], data.points[s.vertices[1]]);
  }
  std::vector<Point> pts;
  pts.reserve(s.vertices.size());
  for (Vertex v : s.vertices) pts.push_back(data.points[v]);
  return MinEnclosingBall(pts).radius;
}

// All strictly increasing vertex tuples of the given size, lexicographic.
std::vector<Simplex> Combinations(Vertex n, std::size_t size) {
  std::vector<Simplex> out;
  if (size == 0 || size > n) return out;
  std::vector<Vertex> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<Vertex>(i);
  while (true) {
    out.push_back(Simplex{idx});
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

bool EntryLess(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.simplex.dim() != b.simplex.dim()) {
    return a.simplex.dim() < b.simplex.dim();
  }
  return a.simplex.vertices < b.simplex.vertices;
}

}  // namespace

SimplicialComplex BuildAnonymityComplex(const NormalizedDataset& data,
                                        double eps, int dim_cap) {
  Require(dim_cap >= 1, "dim_cap must be at least 1");
  Require(eps >= 0.0, "eps must be nonnegative");
  SimplicialComplex out;
  out.dim_cap = dim_cap;
  std::vector<Simplex> level;
  for (Vertex v = 0; v < data.size(); ++v) {
    level.push_back(Simplex{{v}});
    out.simplices.insert(level.back());
  }
  const Vertex n = static_cast<Vertex>(data.size());
  for (int dim = 1; dim <= dim_cap && !level.empty(); ++dim) {
    std::vector<Simplex> next;
    for (const Simplex& base : level) {
      for (Vertex v = base.vertices.back() + 1; v < n; ++v) {
        Simplex candidate = base;
        candidate.vertices.push_back(v);
        const auto faces = candidate.Faces();
        const bool faces_present =
            std::all_of(faces.begin(), faces.end(),
                        [&](const Simplex& f) { return out.Contains(f); });
        if (faces_present && Radius(data, candidate) <= eps) {
          next.push_back(std::move(candidate));
        }
      }
    }
    for (const Simplex& s : next) out.simplices.insert(s);
    level = std::move(next);
  }
  return out;
}

Filtration BuildFiltration(const NormalizedDataset& data,
                           const FiltrationOptions& options) {
  Require(options.dim_cap >= 1, "dim_cap must be at least 1");
  Require(data.size() >= 1, "filtration needs at least one point");
  const std::uint64_t n = data.size();
  const int top = static_cast<int>(
      std::min<std::uint64_t>(options.dim_cap, n - 1));
  const std::uint64_t top_count = Binomial(n, top + 1);
  if (top_count > options.max_simplices) {
    Fail(ErrorCode::kSize,
         "filtration would hold " + std::to_string(top_count) +
             " simplices of dimension " + std::to_string(top) +
             " (budget " + std::to_string(options.max_simplices) +
             "); lower dim_cap");
  }

  Filtration filtration;
  filtration.dim_cap = options.dim_cap;
  std::vector<Simplex> lower;
  std::vector<double> lower_births;
  for (int dim = 0; dim <= top; ++dim) {
    std::vector<Simplex> level =
        Combinations(static_cast<Vertex>(n), static_cast<std::size_t>(dim) + 1);
    std::vector<double> births(level.size(), 0.0);
    ParallelFor(level.size(), options.threads, [&](std::size_t i) {
      double birth = Radius(data, level[i]);
      // Clamp to the faces so rounding never lets a coface precede a face.
      for (const Simplex& f : level[i].Faces()) {
        auto it = std::lower_bound(lower.begin(), lower.end(), f);
        birth = std::max(birth, lower_births[it - lower.begin()]);
      }
      births[i] = birth;
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      filtration.entries.push_back({level[i], births[i]});
    }
    lower = std::move(level);
    lower_births = std::move(births);
  }
  std::sort(filtration.entries.begin(), filtration.entries.end(), EntryLess);
  return filtration;
}

SimplicialComplex Filtration::SublevelComplex(double eps) const {
  SimplicialComplex out;
  out.dim_cap = dim_cap;
  for (const FiltrationEntry& e : entries) {
    if (e.birth > eps) break;
    out.simplices.insert(e.simplex);
  }
  return out;
}

std::vector<double> Filtration::CriticalValues() const {
  std::vector<double> out;
  for (const FiltrationEntry& e : entries) {
    if (out.empty() || out.back() != e.birth) out.push_back(e.birth);
  }
  return out;
}

bool IsAnonymitySimplex(const NormalizedDataset& data,
                        const std::vector<std::size_t>& subset, double eps,
                        std::size_t k) {
  Require(!subset.empty(), "anonymity simplex test needs a nonempty subset");
  Require(k >= 1, "k must be at least 1");
  std::vector<std::size_t> unique = subset;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  const std::vector<Point> pts = data.Select(unique);
  if (unique.size() < k) return false;
  return BallsIntersect(pts, eps);
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteFiltration(std::ostream& out, const Filtration& filtration) {
  for (const FiltrationEntry& e : filtration.entries) {
    out << FormatDouble(e.birth);
    for (Vertex v : e.simplex.vertices) out << ' ' << (v + 1);
    out << '\n';
  }
}

Filtration ReadFiltration(std::istream& in) {
  Filtration filtration;
  filtration.dim_cap = 0;
  std::set<Simplex> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string birth_text;
    fields >> birth_text;
    FiltrationEntry entry;
    auto [ptr, ec] = std::from_chars(
        birth_text.data(), birth_text.data() + birth_text.size(), entry.birth);
    if (ec != std::errc() || ptr != birth_text.data() + birth_text.size()) {
      Fail(ErrorCode::kInput, "filtration line " + std::to_string(line_no) +
                                  ": bad birth value '" + birth_text + "'");
    }
    long long v = 0;
    while (fields >> v) {
      if (v < 1) {
        Fail(ErrorCode::kInput, "filtration line " + std::to_string(line_no) +
                                    ": vertex ids start at 1");
      }
      entry.simplex.vertices.push_back(static_cast<Vertex>(v - 1));
    }
    const std::vector<Vertex>& vs = entry.simplex.vertices;
    if (!fields.eof() || vs.empty() ||
        std::adjacent_find(vs.begin(), vs.end(),
                           std::greater_equal<Vertex>()) != vs.end()) {
      Fail(ErrorCode::kInput, "filtration line " + std::to_string(line_no) +
                                  ": vertices must be strictly increasing");
    }
    for (const Simplex& f : entry.simplex.Faces()) {
      if (!seen.count(f)) {
        Fail(ErrorCode::kFiltration,
             "filtration line " + std::to_string(line_no) +
                 ": a face appears after its coface");
      }
    }
    if (!filtration.entries.empty() &&
        EntryLess(entry, filtration.entries.back())) {
      Fail(ErrorCode::kFiltration, "filtration line " +
                                       std::to_string(line_no) +
                                       ": entries are not sorted");
    }
    filtration.dim_cap = std::max(filtration.dim_cap, entry.simplex.dim());
    seen.insert(entry.simplex);
    filtration.entries.push_back(std::move(entry));
  }
  filtration.dim_cap = std::max(filtration.dim_cap, 1);
  return filtration;
}

}  // namespace anonytope
