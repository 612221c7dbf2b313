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
#include <memory>
#include <string>

#include "anonytope/anonytope.h"
#include "json.hpp"
#include "json_schema.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSampleCsv =
    "Age,ZIP Code,Salary\n"
    "25,47677,\"$47,000\"\n"
    "22,47602,\"$32,000\"\n"
    "24,47678,\"$52,000\"\n"
    "43,47905,\"$151,000\"\n"
    "52,47909,\"$145,000\"\n"
    "38,47906,\"$98,000\"\n"
    "47,47605,\"$110,000\"\n"
    "36,47673,\"$92,000\"\n"
    "32,47607,\"$115,000\"\n";

constexpr const char* kTrees = R"({"trees": [
  {"attribute": "gender", "root": "Person",
   "children": {"Person": ["Male", "Female"]}},
  {"attribute": "country", "root": "World",
   "children": {"World": ["Europe", "America"],
                "Europe": ["West Europe", "East Europe"],
                "America": ["North America", "South America"],
                "West Europe": ["Portugal", "Spain"],
                "East Europe": ["Hungary", "Poland"],
                "North America": ["USA", "Canada"],
                "South America": ["Brazil", "Argentina"]}}]})";

struct StringDeleter {
  void operator()(char* s) const { anontp_free_string(s); }
};
using Owned = std::unique_ptr<char, StringDeleter>;

json Parse(char* s) {
  Owned holder(s);
  return json::parse(s);
}

class Sample : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* quasi[] = {"Age", "ZIP Code"};
    const char* sensitive[] = {"Salary"};
    anontp_columns cols{quasi, 2, nullptr, 0, sensitive, 1};
    ASSERT_EQ(anontp_dataset_from_csv_text(kSampleCsv, &cols, &ds_), ANONTP_OK)
        << anontp_last_error();
  }
  void TearDown() override { anontp_dataset_free(ds_); }
  anontp_dataset* ds_ = nullptr;
};

TEST(CApi, Version) { EXPECT_STREQ(anontp_version(), "1.0.0"); }

TEST(CApi, MinEnclosingBall) {
  const double tri[] = {0, 0, 2, 0, 1, 0.1};
  double center[2], radius = -1;
  ASSERT_EQ(anontp_min_enclosing_ball(tri, 3, 2, center, &radius), ANONTP_OK);
  EXPECT_NEAR(radius, 1.0, 1e-15);
  EXPECT_NEAR(center[0], 1.0, 1e-15);
  EXPECT_EQ(anontp_min_enclosing_ball(tri, 0, 2, center, &radius),
            ANONTP_ERROR_CONTRACT);
  EXPECT_NE(std::string(anontp_last_error()), "");
}

TEST(CApi, NullArgumentsAreContractErrors) {
  anontp_dataset* ds = nullptr;
  EXPECT_EQ(anontp_dataset_from_csv_text(nullptr, nullptr, &ds),
            ANONTP_ERROR_CONTRACT);
  EXPECT_EQ(anontp_regimes_json(nullptr, 2, nullptr), ANONTP_ERROR_CONTRACT);
  EXPECT_EQ(anontp_dataset_rows(nullptr), 0u);
}

TEST(CApi, MissingColumnIsInputError) {
  const char* quasi[] = {"Height"};
  anontp_columns cols{quasi, 1, nullptr, 0, nullptr, 0};
  anontp_dataset* ds = nullptr;
  EXPECT_EQ(anontp_dataset_from_csv_text(kSampleCsv, &cols, &ds),
            ANONTP_ERROR_INPUT);
  EXPECT_NE(std::string(anontp_last_error()).find("Height"), std::string::npos);
  EXPECT_EQ(ds, nullptr);
}

TEST(CApi, MissingFileIsInputError) {
  const char* quasi[] = {"Age"};
  anontp_columns cols{quasi, 1, nullptr, 0, nullptr, 0};
  anontp_dataset* ds = nullptr;
  EXPECT_EQ(anontp_dataset_load_csv("/nonexistent.csv", &cols, &ds),
            ANONTP_ERROR_INPUT);
}

TEST(CApi, FromPoints) {
  const double pts[] = {0, 0, 3, 4};
  anontp_dataset* ds = nullptr;
  ASSERT_EQ(anontp_dataset_from_points(pts, 2, 2, &ds), ANONTP_OK);
  EXPECT_EQ(anontp_dataset_rows(ds), 2u);
  double p[2];
  ASSERT_EQ(anontp_dataset_point(ds, 1, p), ANONTP_OK);
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[1], 1.0);
  EXPECT_EQ(anontp_dataset_point(ds, 2, p), ANONTP_ERROR_CONTRACT);
  anontp_dataset_free(ds);
}

TEST_F(Sample, ShapeAndPoints) {
  EXPECT_EQ(anontp_dataset_rows(ds_), 9u);
  EXPECT_EQ(anontp_dataset_dims(ds_), 2u);
  double p[2];
  ASSERT_EQ(anontp_dataset_point(ds_, 4, p), ANONTP_OK);
  EXPECT_EQ(p[0], 1.0);
}

TEST_F(Sample, Check) {
  int achieved = -1;
  char* out = nullptr;
  ASSERT_EQ(anontp_check(ds_, 0.75, 3, &achieved, &out), ANONTP_OK);
  EXPECT_EQ(achieved, 1);
  json v = Parse(out);
  EXPECT_EQ(v["n_classes"], 1);
  ASSERT_EQ(anontp_check(ds_, 0.3, 3, &achieved, nullptr), ANONTP_OK);
  EXPECT_EQ(achieved, 0);
}

TEST_F(Sample, RegimesJson) {
  char* out = nullptr;
  ASSERT_EQ(anontp_regimes_json(ds_, 1, &out), ANONTP_OK);
  json doc = Parse(out);
  EXPECT_EQ(schema::CheckRegimeReport(doc), "");
  EXPECT_EQ(doc["regimes"].size(), 6u);
  ASSERT_EQ(anontp_regimes_json(ds_, 10, &out), ANONTP_OK);
  EXPECT_TRUE(Parse(out)["regimes"].empty());
}

TEST_F(Sample, GridJsonMatchesExact) {
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(i * 1e-3);
  char* out = nullptr;
  ASSERT_EQ(anontp_grid_json(ds_, 1, grid.data(), grid.size(), &out),
            ANONTP_OK);
  json doc = Parse(out);
  EXPECT_EQ(schema::CheckRegimeReport(doc), "");
  EXPECT_EQ(doc["mode"], "grid");
  EXPECT_EQ(doc["grid"].size(), grid.size());
  ASSERT_EQ(doc["regimes"].size(), 6u);
  EXPECT_NEAR(doc["regimes"][5]["eps_lo"].get<double>(), 0.708, 1e-12);
}

TEST_F(Sample, MinimalEpsilon) {
  double eps = -1;
  char* out = nullptr;
  ASSERT_EQ(anontp_minimal_epsilon(ds_, 2, ANONTP_SMALLEST_EPS, &eps, &out),
            ANONTP_OK);
  EXPECT_NEAR(eps, std::sqrt(0.5), 1e-12);
  json r = Parse(out);
  EXPECT_EQ(schema::CheckRegime(r, "$"), "");
  EXPECT_EQ(anontp_minimal_epsilon(ds_, 10, ANONTP_SMALLEST_EPS, &eps, nullptr),
            ANONTP_ERROR_INFEASIBLE);
  EXPECT_NE(std::string(anontp_last_error()).find("k exceeds row count"),
            std::string::npos);
}

TEST_F(Sample, NearestRegime) {
  char* out = nullptr;
  ASSERT_EQ(anontp_nearest_regime_json(ds_, 3, 0.3, &out), ANONTP_OK);
  json r = Parse(out);
  EXPECT_NEAR(r["eps_lo"].get<double>(), std::sqrt(0.5), 1e-12);
  ASSERT_EQ(anontp_nearest_regime_json(ds_, 10, 0.3, &out), ANONTP_OK);
  EXPECT_TRUE(Parse(out).is_null());
}

TEST_F(Sample, AnonymizeCsv) {
  char* csv = nullptr;
  char* regime = nullptr;
  ASSERT_EQ(anontp_anonymize_csv(ds_, 3, ANONTP_MAX_CLASSES, 1, &csv, &regime),
            ANONTP_OK);
  Owned csv_holder(csv);
  json r = Parse(regime);
  EXPECT_EQ(r["n_classes"], 1);
  const std::string text(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "Age,ZIP Code,Salary");
  EXPECT_NE(text.find("[22-52],[47602-47909],\"$47,000\""), std::string::npos);
  EXPECT_EQ(anontp_anonymize_csv(ds_, 10, ANONTP_MAX_CLASSES, 0, &csv, nullptr),
            ANONTP_ERROR_INFEASIBLE);
}

TEST_F(Sample, BarcodeJsonAndFiltration) {
  anontp_filtration_options opt;
  anontp_filtration_options_default(&opt);
  EXPECT_EQ(opt.dim_cap, 2);
  char* out = nullptr;
  ASSERT_EQ(anontp_barcode_json(ds_, &opt, &out), ANONTP_OK);
  json doc = Parse(out);
  EXPECT_EQ(schema::CheckBarcode(doc), "");
  EXPECT_EQ(doc["n_points"], 9);
  ASSERT_EQ(anontp_filtration_text(ds_, &opt, &out), ANONTP_OK);
  Owned text(out);
  EXPECT_EQ(std::string(text.get()).rfind("0 1\n", 0), 0u);
  opt.max_simplices = 5;
  EXPECT_EQ(anontp_barcode_json(ds_, &opt, &out), ANONTP_ERROR_SIZE);
}

TEST_F(Sample, BarcodeSvg) {
  const size_t ks[] = {2, 3};
  char* out = nullptr;
  ASSERT_EQ(anontp_barcode_svg(ds_, nullptr, ks, 2, &out), ANONTP_OK);
  Owned svg(out);
  EXPECT_NE(std::string(svg.get()).find("k = 3"), std::string::npos);
}

class Categorical : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(anontp_categorical_from_text(
                  "gender,country\nMale,Portugal\nFemale,Spain\nMale,Hungary\n",
                  kTrees, nullptr, 0, &cat_),
              ANONTP_OK)
        << anontp_last_error();
  }
  void TearDown() override { anontp_categorical_free(cat_); }
  anontp_categorical* cat_ = nullptr;
};

TEST_F(Categorical, Shape) {
  EXPECT_EQ(anontp_categorical_rows(cat_), 3u);
  EXPECT_EQ(anontp_categorical_attributes(cat_), 2u);
}

TEST_F(Categorical, GeneralizeValue) {
  char* node = nullptr;
  ASSERT_EQ(anontp_generalize_value(cat_, "country", "USA", 2, &node),
            ANONTP_OK);
  Owned holder(node);
  EXPECT_STREQ(node, "America");
  EXPECT_EQ(anontp_generalize_value(cat_, "color", "USA", 2, &node),
            ANONTP_ERROR_INPUT);
  EXPECT_EQ(anontp_generalize_value(cat_, "country", "Mars", 1, &node),
            ANONTP_ERROR_INPUT);
  EXPECT_EQ(anontp_generalize_value(cat_, "country", "USA", 9, &node),
            ANONTP_ERROR_CONTRACT);
}

TEST_F(Categorical, LatticeSearch) {
  char* out = nullptr;
  ASSERT_EQ(anontp_lattice_search_json(cat_, 3, ANONTP_EXHAUSTIVE, 2, &out),
            ANONTP_OK);
  json ex = Parse(out);
  EXPECT_EQ(schema::CheckLatticeReport(ex), "");
  EXPECT_EQ(ex["minimal_nodes"], json({{1, 2}}));
  ASSERT_EQ(
      anontp_lattice_search_json(cat_, 3, ANONTP_LOWER_THEN_UPPER, 1, &out),
      ANONTP_OK);
  json lu = Parse(out);
  EXPECT_FALSE(lu["upper_chain_computed"]);
  EXPECT_EQ(lu["chains"].size(), 1u);
}

TEST_F(Categorical, ChainSweep) {
  const int path[] = {0, 0, 1, 0, 1, 1, 1, 2, 1, 3};
  char* out = nullptr;
  ASSERT_EQ(anontp_chain_sweep_json(cat_, path, 5, 3, &out), ANONTP_OK);
  json doc = Parse(out);
  EXPECT_EQ(schema::CheckLatticeReport(doc), "");
  EXPECT_EQ(doc["chains"][0]["first_k_anonymous"], json({1, 2}));
  const int bad[] = {0, 0, 0, 2};
  EXPECT_EQ(anontp_chain_sweep_json(cat_, bad, 2, 3, &out),
            ANONTP_ERROR_CONTRACT);
}

TEST(CApiCategorical, BadInputs) {
  anontp_categorical* cat = nullptr;
  EXPECT_EQ(anontp_categorical_from_text("gender\nMale\n", "{", nullptr, 0, &cat),
            ANONTP_ERROR_INPUT);
  EXPECT_EQ(anontp_categorical_from_text("gender,country\nMale,Mars\n", kTrees,
                                         nullptr, 0, &cat),
            ANONTP_ERROR_INPUT);
  EXPECT_EQ(cat, nullptr);
}

}  // namespace
