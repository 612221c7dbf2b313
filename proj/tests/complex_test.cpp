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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "anonytope/complex.hpp"
#include "anonytope/error.hpp"
#include "test_support.hpp"

namespace anonytope {
namespace {

Simplex S(std::vector<Vertex> v) { return Simplex{std::move(v)}; }

NormalizedDataset Raw(std::vector<Point> pts) {
  // Bypass scaling so distances are the literal ones.
  NormalizedDataset d = NormalizePoints(pts);
  d.points = pts;
  return d;
}

NormalizedDataset Triangle() {
  return Raw({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
}

TEST(Simplex, FacesInOrder) {
  auto f = S({0, 2, 5}).Faces();
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], S({0, 2}));
  EXPECT_EQ(f[1], S({0, 5}));
  EXPECT_EQ(f[2], S({2, 5}));
  EXPECT_TRUE(S({3}).Faces().empty());
}

TEST(AnonymityComplex, DistinctPointsAtZeroAreIsolated) {
  auto c = BuildAnonymityComplex(testing::SampleDataset(), 0.0, 2);
  EXPECT_EQ(c.simplices.size(), 9u);
  EXPECT_EQ(c.CountOfDim(0), 9u);
}

TEST(AnonymityComplex, TwoPointsTouchingAtHalf) {
  auto c = BuildAnonymityComplex(Raw({{0, 0}, {1, 0}}), 0.5, 2);
  EXPECT_EQ(c.simplices.size(), 3u);
  EXPECT_TRUE(c.Contains(S({0, 1})));
}

TEST(AnonymityComplex, HollowTriangleBelowCircumradius) {
  auto c = BuildAnonymityComplex(Triangle(), 0.55, 2);
  EXPECT_EQ(c.CountOfDim(1), 3u);
  EXPECT_EQ(c.CountOfDim(2), 0u);
  auto full = BuildAnonymityComplex(Triangle(), 1 / std::sqrt(3.0) + 1e-12, 2);
  EXPECT_EQ(full.CountOfDim(2), 1u);
}

TEST(AnonymityComplex, DimCapLimitsSimplices) {
  auto c = BuildAnonymityComplex(Triangle(), 1.0, 1);
  EXPECT_EQ(c.CountOfDim(2), 0u);
  EXPECT_EQ(c.CountOfDim(1), 3u);
}

TEST(Filtration, SinglePoint) {
  Filtration f = BuildFiltration(Raw({{0.3}}));
  ASSERT_EQ(f.entries.size(), 1u);
  EXPECT_EQ(f.entries[0].birth, 0.0);
}

TEST(Filtration, TwoPoints) {
  Filtration f = BuildFiltration(Raw({{0, 0}, {1, 0}}));
  ASSERT_EQ(f.entries.size(), 3u);
  EXPECT_EQ(f.entries[0].simplex, S({0}));
  EXPECT_EQ(f.entries[1].simplex, S({1}));
  EXPECT_EQ(f.entries[2].simplex, S({0, 1}));
  EXPECT_DOUBLE_EQ(f.entries[2].birth, 0.5);
}

TEST(Filtration, TriangleBirths) {
  Filtration f = BuildFiltration(Triangle());
  ASSERT_EQ(f.entries.size(), 7u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(f.entries[i].birth, 0.0);
  for (int i = 3; i < 6; ++i) EXPECT_NEAR(f.entries[i].birth, 0.5, 1e-15);
  EXPECT_NEAR(f.entries[6].birth, 1 / std::sqrt(3.0), 1e-15);
  auto crit = f.CriticalValues();
  EXPECT_EQ(crit.front(), 0.0);
  EXPECT_TRUE(std::is_sorted(crit.begin(), crit.end()));
}

TEST(Filtration, SizeGuard) {
  FiltrationOptions opt;
  opt.dim_cap = 3;
  opt.max_simplices = 10;
  try {
    BuildFiltration(testing::SampleDataset(), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSize);
    EXPECT_NE(std::string(e.what()).find("dim"), std::string::npos);
  }
}

TEST(Filtration, SortedFacesFirst) {
  Filtration f = BuildFiltration(testing::SampleDataset());
  std::map<Simplex, std::size_t> pos;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    const auto& e = f.entries[i];
    if (i > 0) {
      const auto& p = f.entries[i - 1];
      const int pd = p.simplex.dim(), ed = e.simplex.dim();
      EXPECT_TRUE(std::tie(p.birth, pd, p.simplex.vertices) <
                  std::tie(e.birth, ed, e.simplex.vertices));
    }
    for (const Simplex& face : e.simplex.Faces()) {
      ASSERT_TRUE(pos.count(face));
      EXPECT_LE(f.entries[pos[face]].birth, e.birth);
    }
    pos[e.simplex] = i;
  }
  EXPECT_EQ(f.entries.size(), 9u + 36u + 84u);
}

TEST(Filtration, SublevelMatchesDirectComplexRandom) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> eps_dist(0.0, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    auto data = NormalizePoints(testing::RandomPoints(rng, 8, 2));
    FiltrationOptions opt;
    opt.dim_cap = 3;
    Filtration f = BuildFiltration(data, opt);
    std::vector<double> eps_values = f.CriticalValues();
    for (int i = 0; i < 10; ++i) eps_values.push_back(eps_dist(rng));
    for (double eps : eps_values) {
      auto direct = BuildAnonymityComplex(data, eps, 3);
      auto sub = f.SublevelComplex(eps);
      EXPECT_EQ(direct.simplices, sub.simplices)
          << "trial " << trial << " eps " << eps;
    }
  }
}

TEST(Filtration, NestedAndDownwardClosed) {
  std::mt19937_64 rng(5);
  auto data = NormalizePoints(testing::RandomPoints(rng, 7, 3));
  Filtration f = BuildFiltration(data);
  SimplicialComplex prev;
  for (double eps : f.CriticalValues()) {
    auto c = f.SublevelComplex(eps);
    for (const Simplex& s : prev.simplices) EXPECT_TRUE(c.Contains(s));
    for (const Simplex& s : c.simplices) {
      for (const Simplex& face : s.Faces()) EXPECT_TRUE(c.Contains(face));
    }
    prev = c;
  }
}

TEST(Filtration, ParallelMatchesSerial) {
  std::mt19937_64 rng(9);
  auto data = NormalizePoints(testing::RandomPoints(rng, 12, 2));
  FiltrationOptions one, many;
  one.dim_cap = many.dim_cap = 3;
  many.threads = 4;
  Filtration a = BuildFiltration(data, one);
  Filtration b = BuildFiltration(data, many);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].simplex, b.entries[i].simplex);
    EXPECT_EQ(a.entries[i].birth, b.entries[i].birth);
  }
}

TEST(AnonymitySimplex, Basics) {
  auto sample = testing::SampleDataset();
  EXPECT_TRUE(IsAnonymitySimplex(sample, {4}, 0.0, 1));
  auto square = Raw({{0, 0}, {0.2, 0}, {0, 0.2}, {0.2, 0.2}});
  EXPECT_TRUE(IsAnonymitySimplex(square, {0, 1, 2, 3}, 0.15, 4));
  EXPECT_FALSE(IsAnonymitySimplex(square, {0, 1, 2}, 0.15, 4));
  // Two distant pairs: only 1-simplices at this radius.
  auto split = Raw({{0, 0}, {0.1, 0}, {0.9, 0}, {1, 0}});
  EXPECT_FALSE(IsAnonymitySimplex(split, {0, 1, 2, 3}, 0.1, 4));
  EXPECT_TRUE(IsAnonymitySimplex(split, {0, 1}, 0.1, 2));
  try {
    IsAnonymitySimplex(split, {0, 7}, 0.1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(FiltrationText, RoundTripIsLossless) {
  Filtration f = BuildFiltration(testing::SampleDataset());
  std::stringstream ss;
  WriteFiltration(ss, f);
  Filtration g = ReadFiltration(ss);
  ASSERT_EQ(f.entries.size(), g.entries.size());
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    EXPECT_EQ(f.entries[i].simplex, g.entries[i].simplex);
    EXPECT_EQ(f.entries[i].birth, g.entries[i].birth);
  }
}

TEST(FiltrationText, OneBasedVertices) {
  std::stringstream ss;
  WriteFiltration(ss, BuildFiltration(Raw({{0, 0}, {1, 0}})));
  EXPECT_EQ(ss.str(), "0 1\n0 2\n0.5 1 2\n");
}

TEST(FiltrationText, RejectsBadInput) {
  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      ReadFiltration(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kContract;
  };
  EXPECT_EQ(code_of("0 1\nzz 2\n"), ErrorCode::kInput);
  EXPECT_EQ(code_of("0 0\n"), ErrorCode::kInput);
  EXPECT_EQ(code_of("0 1\n0.5 1 2\n"), ErrorCode::kFiltration);
  EXPECT_EQ(code_of("0 2 1\n"), ErrorCode::kInput);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  const double x = testing::oracle::kMeb456;
  EXPECT_EQ(std::stod(FormatDouble(x)), x);
}

TEST(Binomial, Values) {
  EXPECT_EQ(Binomial(9, 3), 84u);
  EXPECT_EQ(Binomial(5, 0), 1u);
  EXPECT_EQ(Binomial(3, 5), 0u);
}

}  // namespace
}  // namespace anonytope
