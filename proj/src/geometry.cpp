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

#include "anonytope/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <list>
#include <string>
#include <system_error>

#include "anonytope/error.hpp"

namespace anonytope {

std::vector<std::size_t> NumericTable::QuasiColumns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < roles.size(); ++c) {
    if (roles[c] == ColumnRole::kQuasiIdentifier) out.push_back(c);
  }
  return out;
}

void NumericTable::Validate() const {
  if (roles.size() != columns.size()) {
    Fail(ErrorCode::kInput, "column roles do not match the header");
  }
  if (rows.empty()) Fail(ErrorCode::kInput, "no data rows");
  if (QuasiColumns().empty()) {
    Fail(ErrorCode::kInput, "no quasi-identifier columns selected");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      Fail(ErrorCode::kInput, "row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) +
                                  " cells, expected " +
                                  std::to_string(columns.size()));
    }
  }
}

double ParseNumericCell(const std::string& cell, std::size_t row,
                        const std::string& column) {
  std::size_t begin = cell.find_first_not_of(" \t");
  std::size_t end = cell.find_last_not_of(" \t");
  double value = 0.0;
  if (begin != std::string::npos) {
    const char* first = cell.data() + begin;
    const char* last = cell.data() + end + 1;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc() && ptr == last && std::isfinite(value)) return value;
  }
  Fail(ErrorCode::kInput, "row " + std::to_string(row + 1) + ", column '" +
                              column + "': '" + cell +
                              "' is not a finite number");
}

namespace {

NormalizedDataset NormalizeRaw(std::vector<Point> raw) {
  Require(!raw.empty(), "dataset must have at least one row");
  const std::size_t d = raw.front().size();
  Require(d >= 1, "dataset must have at least one coordinate");
  NormalizedDataset out;
  out.scale.resize(d);
  for (std::size_t c = 0; c < d; ++c) {
    out.scale[c].min = out.scale[c].max = raw.front()[c];
  }
  for (const Point& p : raw) {
    Require(p.size() == d, "rows must all have the same dimension");
    for (std::size_t c = 0; c < d; ++c) {
      out.scale[c].min = std::min(out.scale[c].min, p[c]);
      out.scale[c].max = std::max(out.scale[c].max, p[c]);
    }
  }
  out.points.reserve(raw.size());
  for (const Point& p : raw) {
    Point q(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
      const ScaleParams& s = out.scale[c];
      // Constant columns collapse to 0.
      if (s.max > s.min) q[c] = (p[c] - s.min) / (s.max - s.min);
    }
    out.points.push_back(std::move(q));
  }
  out.original = std::move(raw);
  return out;
}

}  // namespace

NormalizedDataset NormalizeDataset(const NumericTable& table) {
  table.Validate();
  const std::vector<std::size_t> quasi = table.QuasiColumns();
  std::vector<Point> raw;
  raw.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    Point p;
    p.reserve(quasi.size());
    for (std::size_t c : quasi) {
      p.push_back(ParseNumericCell(table.rows[r][c], r, table.columns[c]));
    }
    raw.push_back(std::move(p));
  }
  return NormalizeRaw(std::move(raw));
}

NormalizedDataset NormalizePoints(const std::vector<Point>& raw) {
  return NormalizeRaw(raw);
}

Point NormalizedDataset::Denormalize(std::span<const double> point) const {
  Require(point.size() == scale.size(), "dimension mismatch in Denormalize");
  Point out(point.size());
  for (std::size_t c = 0; c < point.size(); ++c) {
    out[c] = scale[c].min + point[c] * (scale[c].max - scale[c].min);
  }
  return out;
}

std::vector<Point> NormalizedDataset::Select(
    std::span<const std::size_t> rows) const {
  std::vector<Point> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    Require(r < points.size(), "row index " + std::to_string(r + 1) +
                                   " is out of range");
    out.push_back(points[r]);
  }
  return out;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    sum += t * t;
  }
  return sum;
}

double PairRadius(std::span<const double> a, std::span<const double> b) {
  return 0.5 * std::sqrt(SquaredDistance(a, b));
}

namespace {

// Ball through every point of `support` with center in their affine hull.
// Affinely dependent members are skipped, which leaves the ball of the
// independent remainder.
Ball Circumball(const std::vector<const Point*>& support, std::size_t dim) {
  Ball ball;
  if (support.empty()) {
    ball.center.assign(dim, 0.0);
    ball.radius = -1.0;
    return ball;
  }
  const Point& origin = *support.front();
  if (support.size() == 1) {
    ball.center = origin;
    return ball;
  }
  if (support.size() == 2) {
    const Point& other = *support[1];
    ball.center.resize(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      ball.center[c] = 0.5 * (origin[c] + other[c]);
    }
    ball.radius = PairRadius(origin, other);
    return ball;
  }
  const std::size_t m = support.size() - 1;
  std::vector<Point> edges(m, Point(dim));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t c = 0; c < dim; ++c) {
      edges[j][c] = (*support[j + 1])[c] - origin[c];
    }
  }
  // Solve (V V^T) lambda = |v_j|^2 / 2 for the center offset V^T lambda.
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < dim; ++c) dot += edges[i][c] * edges[j][c];
      a[i][j] = dot;
    }
    a[i][m] = 0.5 * a[i][i];
    scale = std::max(scale, a[i][i]);
  }
  std::vector<bool> used(m, false);
  std::vector<std::size_t> pivot_row(m, m);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t best = m;
    double best_abs = 1e-12 * scale;
    for (std::size_t r = 0; r < m; ++r) {
      if (!used[r] && std::abs(a[r][col]) > best_abs) {
        best = r;
        best_abs = std::abs(a[r][col]);
      }
    }
    if (best == m) continue;
    used[best] = true;
    pivot_row[col] = best;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == best || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[best][col];
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[best][j];
    }
  }
  ball.center = origin;
  for (std::size_t col = 0; col < m; ++col) {
    if (pivot_row[col] == m) continue;
    const double lambda = a[pivot_row[col]][m] / a[pivot_row[col]][col];
    for (std::size_t c = 0; c < dim; ++c) {
      ball.center[c] += lambda * edges[col][c];
    }
  }
  double r2 = 0.0;
  for (const Point* p : support) {
    r2 = std::max(r2, SquaredDistance(ball.center, *p));
  }
  ball.radius = std::sqrt(r2);
  return ball;
}

bool Outside(const Ball& ball, const Point& p) {
  if (ball.radius < 0.0) return true;
  const double slack = 1e-13 * std::max(1.0, ball.radius);
  return std::sqrt(SquaredDistance(ball.center, p)) > ball.radius + slack;
}

class Welzl {
 public:
  Welzl(std::span<const Point> points, std::size_t dim) : dim_(dim) {
    for (const Point& p : points) order_.push_back(&p);
  }

  Ball Solve() {
    std::vector<const Point*> support;
    return Recurse(order_.end(), support);
  }

 private:
  // Move-to-front: points that forced a new ball are tried first next time.
  Ball Recurse(std::list<const Point*>::iterator end,
               std::vector<const Point*>& support) {
    Ball ball = Circumball(support, dim_);
    if (support.size() == dim_ + 1) return ball;
    for (auto it = order_.begin(); it != end;) {
      auto next = std::next(it);
      if (Outside(ball, **it)) {
        support.push_back(*it);
        ball = Recurse(it, support);
        support.pop_back();
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
    return ball;
  }

  std::size_t dim_;
  std::list<const Point*> order_;
};

}  // namespace

Ball MinEnclosingBall(std::span<const Point> points) {
  Require(!points.empty(), "minimum enclosing ball of an empty point set");
  const std::size_t dim = points.front().size();
  for (const Point& p : points) {
    Require(p.size() == dim, "points must share one dimension");
  }
  Ball ball = Welzl(points, dim).Solve();
  double excess = 0.0;
  for (const Point& p : points) {
    const double dist = std::sqrt(SquaredDistance(ball.center, p));
    excess = std::max(excess, dist - ball.radius);
  }
  ball.tolerance = excess / std::max(ball.radius, 1e-300);
  if (ball.radius == 0.0) ball.tolerance = excess;
  return ball;
}

bool BallsIntersect(std::span<const Point> points, double eps) {
  Require(eps >= 0.0, "eps must be nonnegative");
  return MinEnclosingBall(points).radius <= eps;
}

}  // namespace anonytope
