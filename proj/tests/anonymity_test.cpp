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

#include <cmath>
#include <random>
#include <sstream>

#include "anonytope/anonymity.hpp"
#include "anonytope/csv.hpp"
#include "anonytope/error.hpp"
#include "anonytope/homology.hpp"
#include "test_support.hpp"

namespace anonytope {
namespace {

namespace oracle = testing::oracle;

NormalizedDataset Raw(std::vector<Point> pts) {
  NormalizedDataset d = NormalizePoints(pts);
  d.points = pts;
  return d;
}

Partition P(std::initializer_list<std::vector<Vertex>> blocks) {
  return Partition(blocks);
}

TEST(Check, IdenticalPointsOneClass) {
  auto d = Raw(std::vector<Point>(5, Point{0.3, 0.3}));
  auto v = CheckKAnonymity(d, 0.0, 5);
  EXPECT_TRUE(v.achieved);
  EXPECT_EQ(v.classes, P({{0, 1, 2, 3, 4}}));
}

TEST(Check, TwoFarPointsNotPaired) {
  auto v = CheckKAnonymity(Raw({{0, 0}, {1, 0}}), 0.4, 2);
  EXPECT_FALSE(v.achieved);
  EXPECT_EQ(v.failure, FailureReason::kComponentTooSmall);
  EXPECT_TRUE(v.classes.empty());
}

TEST(Check, KAboveRowCount) {
  auto v = CheckKAnonymity(testing::SampleDataset(), 10.0, 10);
  EXPECT_FALSE(v.achieved);
  EXPECT_EQ(v.failure, FailureReason::kComponentTooSmall);
  EXPECT_EQ(v.failing_component.size(), 9u);
}

TEST(Check, SampleTwoComponentsNotSimplex) {
  // Components {1,2,3,7,8,9} and {4,5,6}; the larger one does not fit in
  // a ball of radius 0.3.
  auto d = testing::SampleDataset();
  EXPECT_EQ(ComponentsAt(d, 0.3), P({{0, 1, 2, 6, 7, 8}, {3, 4, 5}}));
  auto v3 = CheckKAnonymity(d, 0.3, 3);
  EXPECT_FALSE(v3.achieved);
  EXPECT_EQ(v3.failure, FailureReason::kComponentNotSimplex);
  EXPECT_EQ(v3.failing_component, (std::vector<Vertex>{0, 1, 2, 6, 7, 8}));
  EXPECT_FALSE(CheckKAnonymity(d, 0.3, 4).achieved);
}

TEST(Check, ClosedBallAtThreshold) {
  auto d = testing::SampleDataset();
  const double t = MinEnclosingBall(d.points).radius;
  EXPECT_TRUE(CheckKAnonymity(d, t, 3).achieved);
  EXPECT_FALSE(CheckKAnonymity(d, std::nextafter(t, 0.0), 3).achieved);
}

TEST(Check, AgreesWithPartitionEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> n_dist(2, 7);
  std::uniform_real_distribution<double> eps_dist(0.0, 0.6);
  int achieved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = n_dist(rng);
    auto d = NormalizePoints(testing::RandomPoints(rng, n, 2));
    const std::size_t k = 1 + trial % 3;
    const double eps = eps_dist(rng);
    const bool got = CheckKAnonymity(d, eps, k).achieved;
    EXPECT_EQ(got, testing::OracleKAnonymous(d.points, eps, k))
        << "trial " << trial;
    achieved += got;
  }
  EXPECT_GT(achieved, 10);
  EXPECT_LT(achieved, 110);
}

TEST(Check, CollinearBlocksNeedNoCrossEdge) {
  auto d = Raw({{0}, {1}, {2}, {3}});
  EXPECT_FALSE(CheckKAnonymity(d, 0.5, 2).achieved);
  EXPECT_FALSE(testing::OracleKAnonymous(d.points, 0.5, 2));
  EXPECT_TRUE(CheckKAnonymity(d, 1.5, 2).achieved);
}

TEST(Regimes, TwoPoints) {
  auto r = ComputeRegimes(Raw({{0, 0}, {0.6, 0.8}}), 2);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0].eps_lo, 0.5);
  EXPECT_FALSE(r[0].eps_hi);
  EXPECT_EQ(r[0].n_classes(), 1u);
}

TEST(Regimes, KAboveRowCountIsEmpty) {
  EXPECT_TRUE(ComputeRegimes(testing::SampleDataset(), 10).empty());
}

TEST(Regimes, SampleMatchesOracleForLargerK) {
  auto d = testing::SampleDataset();
  for (std::size_t k : {2u, 3u, 4u, 9u}) {
    auto r = ComputeRegimes(d, k);
    ASSERT_EQ(r.size(), 1u) << k;
    EXPECT_NEAR(r[0].eps_lo, oracle::kFirstThreshold, 1e-12);
    EXPECT_FALSE(r[0].eps_hi);
    EXPECT_EQ(r[0].n_classes(), 1u);
  }
}

TEST(Regimes, SampleMatchesOracleForKOne) {
  auto r = ComputeRegimes(testing::SampleDataset(), 1);
  ASSERT_EQ(r.size(), 6u);
  const double lo[] = {0.0, oracle::kMergeRadii[0], oracle::kMergeRadii[1],
                       oracle::kMergeRadii[2], oracle::kMeb123,
                       oracle::kMebAll};
  const double hi[] = {oracle::kMergeRadii[0], oracle::kMergeRadii[1],
                       oracle::kMergeRadii[2], oracle::kMergeRadii[3],
                       oracle::kMergeRadii[4]};
  const std::size_t classes[] = {9, 8, 7, 6, 5, 1};
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(r[i].eps_lo, lo[i], 1e-12) << i;
    if (i < 5) {
      ASSERT_TRUE(r[i].eps_hi);
      EXPECT_NEAR(*r[i].eps_hi, hi[i], 1e-12) << i;
    }
    EXPECT_EQ(r[i].n_classes(), classes[i]) << i;
  }
  EXPECT_EQ(r[4].classes, P({{0, 1, 2}, {3, 5}, {4}, {6}, {7, 8}}));
}

TEST(Regimes, HalfOpenEndpoints) {
  auto r = ComputeRegimes(testing::SampleDataset(), 1);
  EXPECT_TRUE(r[1].Contains(r[1].eps_lo));
  EXPECT_FALSE(r[1].Contains(*r[1].eps_hi));
  EXPECT_TRUE(r[2].Contains(*r[1].eps_hi));
}

TEST(Regimes, AgreeWithDenseGrid) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = NormalizePoints(testing::RandomPoints(rng, 8, 2));
    std::vector<double> grid;
    for (int i = 0; i <= 800; ++i) grid.push_back(i * 1e-3);
    for (std::size_t k = 1; k <= 4; ++k) {
      auto regimes = ComputeRegimes(d, k);
      auto verdicts = GridSweep(d, grid, k);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const Regime* hit = nullptr;
        for (const auto& r : regimes) {
          if (r.Contains(grid[g])) hit = &r;
        }
        ASSERT_EQ(verdicts[g].achieved, hit != nullptr)
            << "trial " << trial << " k " << k << " eps " << grid[g];
        if (hit) EXPECT_EQ(verdicts[g].classes, hit->classes);
      }
    }
  }
}

TEST(Regimes, ClassCountNonIncreasing) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = NormalizePoints(testing::RandomPoints(rng, 10, 3));
    for (std::size_t k = 1; k <= 3; ++k) {
      auto regimes = ComputeRegimes(d, k);
      for (std::size_t i = 0; i < regimes.size(); ++i) {
        EXPECT_TRUE(testing::IsPartitionOf(regimes[i].classes, d.size()));
        EXPECT_GE(regimes[i].min_class_size(), k);
        if (i + 1 < regimes.size()) {
          EXPECT_GE(regimes[i].n_classes(), regimes[i + 1].n_classes());
          ASSERT_TRUE(regimes[i].eps_hi);
          EXPECT_LE(*regimes[i].eps_hi, regimes[i + 1].eps_lo);
        }
      }
      if (!regimes.empty()) EXPECT_FALSE(regimes.back().eps_hi);
    }
  }
}

TEST(MinimalEpsilon, TwoPoints) {
  auto m = MinimalEpsilon(Raw({{0, 0}, {0, 0.3}}), 2,
                          Objective::kSmallestEps);
  EXPECT_DOUBLE_EQ(m.eps, 0.15);
}

TEST(MinimalEpsilon, SampleObjectives) {
  auto d = testing::SampleDataset();
  auto s = MinimalEpsilon(d, 2, Objective::kSmallestEps);
  EXPECT_NEAR(s.eps, oracle::kFirstThreshold, 1e-12);
  auto m = MinimalEpsilon(d, 1, Objective::kMaxClasses);
  EXPECT_EQ(m.eps, 0.0);
  EXPECT_EQ(m.regime.n_classes(), 9u);
  auto m3 = MinimalEpsilon(d, 3, Objective::kMaxClasses);
  EXPECT_EQ(m3.regime.n_classes(), 1u);
}

TEST(MinimalEpsilon, MaxClassesPrefersEarliestTie) {
  std::vector<Regime> regimes(3);
  regimes[0].eps_lo = 0.1;
  regimes[0].eps_hi = 0.2;
  regimes[0].classes = P({{0, 1}, {2, 3}});
  regimes[1].eps_lo = 0.3;
  regimes[1].eps_hi = 0.4;
  regimes[1].classes = P({{0, 3}, {1, 2}});
  regimes[2].eps_lo = 0.5;
  regimes[2].classes = P({{0, 1, 2, 3}});
  auto m = SelectRegime(regimes, 2, Objective::kMaxClasses);
  EXPECT_EQ(m.eps, 0.1);
}

TEST(MinimalEpsilon, InfeasibleK) {
  try {
    MinimalEpsilon(testing::SampleDataset(), 10, Objective::kSmallestEps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
    EXPECT_NE(std::string(e.what()).find("k exceeds row count"),
              std::string::npos);
  }
}

TEST(NearestRegime, DistanceToInterval) {
  auto r = ComputeRegimes(testing::SampleDataset(), 1);
  auto n = NearestRegime(r, 0.5);
  ASSERT_TRUE(n);
  EXPECT_NEAR(n->eps_lo, oracle::kMebAll, 1e-12);
  auto inside = NearestRegime(r, 0.02);
  ASSERT_TRUE(inside);
  EXPECT_EQ(inside->n_classes(), 8u);
  EXPECT_FALSE(NearestRegime({}, 0.1));
}

NumericTable SampleTable() {
  std::istringstream in(testing::SampleCsv());
  ColumnSelection sel;
  sel.quasi = {"Age", "ZIP Code"};
  sel.sensitive = {"Salary"};
  return TagColumns(ReadCsv(in), sel);
}

TEST(Generalize, ClassIntervalsFromOriginalValues) {
  NumericTable t = SampleTable();
  NormalizedDataset d = NormalizeDataset(t);
  Regime r;
  r.classes = P({{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  GeneralizedTable g = GeneralizeTable(t, d, r);
  EXPECT_EQ(FormatInterval(g.rows[0][0]), "[22-25]");
  EXPECT_EQ(FormatInterval(g.rows[0][1]), "[47602-47678]");
  EXPECT_EQ(FormatInterval(g.rows[3][0]), "[38-52]");
  EXPECT_EQ(FormatInterval(g.rows[3][1]), "[47905-47909]");
  EXPECT_EQ(FormatInterval(g.rows[6][0]), "[32-47]");
  EXPECT_EQ(FormatInterval(g.rows[6][1]), "[47605-47673]");
  EXPECT_EQ(g.class_id[4], 1u);
}

TEST(Generalize, SingletonIsScalar) {
  NumericTable t = SampleTable();
  NormalizedDataset d = NormalizeDataset(t);
  Regime r = ComputeRegimes(d, 1).front();
  GeneralizedTable g = GeneralizeTable(t, d, r);
  EXPECT_EQ(FormatInterval(g.rows[0][0]), "25");
  EXPECT_EQ(FormatInterval(g.rows[0][1]), "47677");
  EXPECT_EQ(FormatInterval({1.5, 1.5}), "1.5");
}

TEST(Generalize, IntervalsCoverMembers) {
  NumericTable t = SampleTable();
  NormalizedDataset d = NormalizeDataset(t);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const Regime& r : ComputeRegimes(d, k)) {
      GeneralizedTable g = GeneralizeTable(t, d, r);
      for (const auto& cls : r.classes) {
        for (Vertex v : cls) {
          for (std::size_t c = 0; c < d.dims(); ++c) {
            EXPECT_LE(g.rows[v][c].lo, d.original[v][c]);
            EXPECT_GE(g.rows[v][c].hi, d.original[v][c]);
            EXPECT_EQ(g.rows[v][c].lo, g.rows[cls[0]][c].lo);
            EXPECT_EQ(g.rows[v][c].hi, g.rows[cls[0]][c].hi);
          }
        }
      }
    }
  }
}

TEST(Generalize, CsvKeepsOtherColumnsWhenAsked) {
  NumericTable t = SampleTable();
  NormalizedDataset d = NormalizeDataset(t);
  Regime r = ComputeRegimes(d, 3).front();
  std::ostringstream plain, kept;
  WriteGeneralizedCsv(plain, GeneralizeTable(t, d, r));
  WriteGeneralizedCsv(kept, GeneralizeTable(t, d, r, true));
  EXPECT_EQ(plain.str().substr(0, plain.str().find('\n')),
            "Age,ZIP Code");
  EXPECT_NE(kept.str().find("\"$47,000\""), std::string::npos);
}

}  // namespace
}  // namespace anonytope
