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

#ifndef ANONYTOPE_GEOMETRY_HPP_
#define ANONYTOPE_GEOMETRY_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace anonytope {

using Point = std::vector<double>;

enum class ColumnRole { kIdentifier, kQuasiIdentifier, kSensitive, kOther };

// A table exactly as ingested: every cell kept as text, one role per column.
// Quasi-identifier cells are parsed only when the table is normalized.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<ColumnRole> roles;
  std::vector<std::vector<std::string>> rows;

  std::size_t size() const { return rows.size(); }
  std::vector<std::size_t> QuasiColumns() const;
  // Throws kInput when the shape invariants do not hold.
  void Validate() const;
};

struct ScaleParams {
  double min = 0.0;
  double max = 0.0;
};

// Rows mapped into the unit hypercube, one coordinate per quasi-identifier.
// Row i of the source table is point i here; external formats print i + 1.
struct NormalizedDataset {
  std::vector<Point> points;
  std::vector<ScaleParams> scale;
  // Quasi-identifier values in original units, same layout as `points`.
  std::vector<Point> original;

  std::size_t size() const { return points.size(); }
  std::size_t dims() const { return scale.size(); }

  Point Denormalize(std::span<const double> point) const;
  std::vector<Point> Select(std::span<const std::size_t> rows) const;
};

struct Ball {
  Point center;
  double radius = 0.0;
  // Largest relative excess of any input point beyond `radius`, as measured
  // after construction. Zero up to rounding for well-conditioned input.
  double tolerance = 0.0;
};

// Parses a quasi-identifier cell. Throws kInput naming row and column.
double ParseNumericCell(const std::string& cell, std::size_t row,
                        const std::string& column);

NormalizedDataset NormalizeDataset(const NumericTable& table);
NormalizedDataset NormalizePoints(const std::vector<Point>& raw);

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Radius of the smallest ball holding two points. Used everywhere a pair
// test is needed so that pair births and ball radii agree bit-for-bit.
double PairRadius(std::span<const double> a, std::span<const double> b);

// Smallest closed ball containing every point. Move-to-front Welzl recursion
// on support sets of at most d + 1 points.
Ball MinEnclosingBall(std::span<const Point> points);

// True iff the closed eps-balls around the points share a common point,
// i.e. the minimum enclosing ball has radius <= eps.
bool BallsIntersect(std::span<const Point> points, double eps);

}  // namespace anonytope

#endif  // ANONYTOPE_GEOMETRY_HPP_
