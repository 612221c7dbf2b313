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

#include "anonytope/anonytope.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anonytope/anonymity.hpp"
#include "anonytope/categorical.hpp"
#include "anonytope/complex.hpp"
#include "anonytope/csv.hpp"
#include "anonytope/error.hpp"
#include "anonytope/geometry.hpp"
#include "anonytope/homology.hpp"
#include "anonytope/report.hpp"

using namespace anonytope;

struct anontp_dataset {
  NumericTable table;
  NormalizedDataset data;
  mutable std::once_flag h0_once;
  mutable WeightedBarcode h0;

  const WeightedBarcode& H0() const {
    std::call_once(h0_once, [this] { h0 = WeightedH0Barcode(data); });
    return h0;
  }
};

struct anontp_categorical {
  std::vector<GeneralizationTree> trees;
  std::vector<CategoricalRow> rows;
};

namespace {

thread_local std::string last_error;

anontp_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput:
      return ANONTP_ERROR_INPUT;
    case ErrorCode::kInfeasible:
      return ANONTP_ERROR_INFEASIBLE;
    case ErrorCode::kContract:
      return ANONTP_ERROR_CONTRACT;
    case ErrorCode::kSize:
      return ANONTP_ERROR_SIZE;
    case ErrorCode::kFiltration:
      return ANONTP_ERROR_FILTRATION;
  }
  return ANONTP_ERROR_INTERNAL;
}

template <typename Fn>
anontp_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return ANONTP_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return ANONTP_ERROR_INTERNAL;
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void NotNull(const void* p, const char* what) {
  Require(p != nullptr, std::string(what) + " must not be null");
}

std::vector<std::string> Names(const char* const* names, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    NotNull(names, "column name array");
    NotNull(names[i], "column name");
    out.emplace_back(names[i]);
  }
  return out;
}

ColumnSelection Selection(const anontp_columns* columns) {
  NotNull(columns, "columns");
  return {Names(columns->quasi, columns->n_quasi),
          Names(columns->identifiers, columns->n_identifiers),
          Names(columns->sensitive, columns->n_sensitive)};
}

anontp_dataset* MakeDataset(const CsvDocument& doc,
                            const anontp_columns* columns) {
  auto ds = std::make_unique<anontp_dataset>();
  ds->table = TagColumns(doc, Selection(columns));
  ds->data = NormalizeDataset(ds->table);
  return ds.release();
}

FiltrationOptions ToOptions(const anontp_filtration_options* options) {
  FiltrationOptions out;
  if (options) {
    out.dim_cap = options->dim_cap;
    out.threads = options->threads;
    out.max_simplices = options->max_simplices;
  }
  return out;
}

Objective ToObjective(anontp_objective objective) {
  return objective == ANONTP_SMALLEST_EPS ? Objective::kSmallestEps
                                          : Objective::kMaxClasses;
}

void RequireFeasibleK(const anontp_dataset* ds, std::size_t k) {
  Require(k >= 1, "k must be at least 1");
  if (k > ds->data.size()) {
    Fail(ErrorCode::kInfeasible,
         "k exceeds row count (" + std::to_string(k) + " > " +
             std::to_string(ds->data.size()) + ")");
  }
}

anontp_categorical* MakeCategorical(const CsvDocument& doc,
                                    std::vector<GeneralizationTree> trees,
                                    const char* const* quasi,
                                    std::size_t n_quasi) {
  auto cat = std::make_unique<anontp_categorical>();
  std::vector<std::string> wanted = Names(quasi, n_quasi);
  for (const std::string& name : wanted) {
    bool found = false;
    for (const auto& t : trees) found = found || t.attribute() == name;
    if (!found) {
      Fail(ErrorCode::kInput, "no generalization tree for column '" + name +
                                  "'");
    }
  }
  std::vector<std::size_t> columns;
  for (auto& t : trees) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), t.attribute()) == wanted.end()) {
      continue;
    }
    auto it = std::find(doc.header.begin(), doc.header.end(), t.attribute());
    if (it == doc.header.end()) {
      Fail(ErrorCode::kInput,
           "column '" + t.attribute() + "' not found in header");
    }
    columns.push_back(static_cast<std::size_t>(it - doc.header.begin()));
    cat->trees.push_back(std::move(t));
  }
  if (cat->trees.empty()) Fail(ErrorCode::kInput, "no attributes selected");
  if (doc.rows.empty()) Fail(ErrorCode::kInput, "no data rows");
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    if (doc.rows[r].size() != doc.header.size()) {
      Fail(ErrorCode::kInput, "row " + std::to_string(r + 1) +
                                  " does not match the header width");
    }
    CategoricalRow row;
    for (std::size_t c : columns) row.push_back(doc.rows[r][c]);
    cat->rows.push_back(std::move(row));
  }
  ValidateRows(cat->rows, cat->trees);
  return cat.release();
}

}  // namespace

extern "C" {

const char* anontp_version(void) { return "1.0.0"; }

const char* anontp_last_error(void) { return last_error.c_str(); }

void anontp_free_string(char* s) { std::free(s); }

void anontp_filtration_options_default(anontp_filtration_options* options) {
  if (!options) return;
  FiltrationOptions defaults;
  options->dim_cap = defaults.dim_cap;
  options->threads = defaults.threads;
  options->max_simplices = defaults.max_simplices;
}

anontp_status anontp_dataset_load_csv(const char* path,
                                      const anontp_columns* columns,
                                      anontp_dataset** out) {
  return Guard([&] {
    NotNull(path, "path");
    NotNull(out, "out");
    *out = MakeDataset(ReadCsvFile(path), columns);
  });
}

anontp_status anontp_dataset_from_csv_text(const char* text,
                                           const anontp_columns* columns,
                                           anontp_dataset** out) {
  return Guard([&] {
    NotNull(text, "text");
    NotNull(out, "out");
    std::istringstream in(text);
    *out = MakeDataset(ReadCsv(in), columns);
  });
}

anontp_status anontp_dataset_from_points(const double* coords, size_t n_rows,
                                         size_t dims, anontp_dataset** out) {
  return Guard([&] {
    NotNull(coords, "coords");
    NotNull(out, "out");
    Require(n_rows >= 1 && dims >= 1, "need at least one row and column");
    auto ds = std::make_unique<anontp_dataset>();
    std::vector<Point> raw(n_rows, Point(dims));
    for (std::size_t c = 0; c < dims; ++c) {
      ds->table.columns.push_back("x" + std::to_string(c + 1));
      ds->table.roles.push_back(ColumnRole::kQuasiIdentifier);
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      std::vector<std::string> cells;
      for (std::size_t c = 0; c < dims; ++c) {
        raw[r][c] = coords[r * dims + c];
        Require(std::isfinite(raw[r][c]), "coordinates must be finite");
        cells.push_back(FormatDouble(raw[r][c]));
      }
      ds->table.rows.push_back(std::move(cells));
    }
    ds->data = NormalizePoints(raw);
    *out = ds.release();
  });
}

void anontp_dataset_free(anontp_dataset* dataset) { delete dataset; }

size_t anontp_dataset_rows(const anontp_dataset* dataset) {
  return dataset ? dataset->data.size() : 0;
}

size_t anontp_dataset_dims(const anontp_dataset* dataset) {
  return dataset ? dataset->data.dims() : 0;
}

anontp_status anontp_dataset_point(const anontp_dataset* dataset, size_t row,
                                   double* out) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(out, "out");
    Require(row < dataset->data.size(), "row out of range");
    const Point& p = dataset->data.points[row];
    std::copy(p.begin(), p.end(), out);
  });
}

anontp_status anontp_min_enclosing_ball(const double* coords, size_t n,
                                        size_t dims, double* center,
                                        double* radius) {
  return Guard([&] {
    NotNull(coords, "coords");
    NotNull(radius, "radius");
    Require(dims >= 1, "dims must be at least 1");
    std::vector<Point> pts(n, Point(dims));
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(coords + i * dims, coords + (i + 1) * dims, pts[i].begin());
    }
    Ball ball = MinEnclosingBall(pts);
    *radius = ball.radius;
    if (center) std::copy(ball.center.begin(), ball.center.end(), center);
  });
}

anontp_status anontp_check(const anontp_dataset* dataset, double eps, size_t k,
                           int* achieved, char** verdict_json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    AnonymityVerdict v = CheckKAnonymity(dataset->data, eps, k);
    if (achieved) *achieved = v.achieved ? 1 : 0;
    if (verdict_json) *verdict_json = Dup(VerdictJson(eps, k, v).dump(2));
  });
}

anontp_status anontp_regimes_json(const anontp_dataset* dataset, size_t k,
                                  char** json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(json, "json");
    Require(k >= 1, "k must be at least 1");
    auto regimes = ComputeRegimes(dataset->data, dataset->H0(), k);
    *json = Dup(RegimeReportJson(k, regimes).dump(2));
  });
}

anontp_status anontp_grid_json(const anontp_dataset* dataset, size_t k,
                               const double* grid, size_t n_grid,
                               char** json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(json, "json");
    Require(n_grid == 0 || grid != nullptr, "grid must not be null");
    const std::vector<double> values(grid, grid + n_grid);
    const auto verdicts = GridSweep(dataset->data, values, k);
    nlohmann::json points = nlohmann::json::array();
    std::vector<Regime> regimes;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const AnonymityVerdict& v = verdicts[i];
      points.push_back({{"eps", values[i]},
                        {"achieved", v.achieved},
                        {"n_classes", v.classes.size()}});
      if (!v.achieved) continue;
      if (!regimes.empty() && !regimes.back().eps_hi &&
          regimes.back().classes == v.classes) {
        continue;
      }
      if (!regimes.empty() && !regimes.back().eps_hi) {
        regimes.back().eps_hi = values[i];
      }
      regimes.push_back({values[i], std::nullopt, v.classes});
    }
    // Close open runs at the first grid value where the verdict changed.
    for (std::size_t r = 0; r < regimes.size(); ++r) {
      if (regimes[r].eps_hi) continue;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= regimes[r].eps_lo) continue;
        if (!verdicts[i].achieved || verdicts[i].classes != regimes[r].classes) {
          regimes[r].eps_hi = values[i];
          break;
        }
      }
    }
    nlohmann::json out = RegimeReportJson(k, regimes);
    out["mode"] = "grid";
    out["grid"] = std::move(points);
    *json = Dup(out.dump(2));
  });
}

anontp_status anontp_minimal_epsilon(const anontp_dataset* dataset, size_t k,
                                     anontp_objective objective, double* eps,
                                     char** regime_json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    RequireFeasibleK(dataset, k);
    auto regimes = ComputeRegimes(dataset->data, dataset->H0(), k);
    MinimalGeneralization best = SelectRegime(regimes, k, ToObjective(objective));
    if (eps) *eps = best.eps;
    if (regime_json) {
      *regime_json = Dup(RegimeReportJson(k, {best.regime})["regimes"][0].dump(2));
    }
  });
}

anontp_status anontp_nearest_regime_json(const anontp_dataset* dataset,
                                         size_t k, double eps, char** json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(json, "json");
    Require(k >= 1, "k must be at least 1");
    auto regimes = ComputeRegimes(dataset->data, dataset->H0(), k);
    std::optional<Regime> best = NearestRegime(regimes, eps);
    *json = Dup(best ? RegimeReportJson(k, {*best})["regimes"][0].dump(2)
                     : std::string("null"));
  });
}

anontp_status anontp_anonymize_csv(const anontp_dataset* dataset, size_t k,
                                   anontp_objective objective,
                                   int keep_other_columns, char** csv,
                                   char** regime_json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(csv, "csv");
    RequireFeasibleK(dataset, k);
    auto regimes = ComputeRegimes(dataset->data, dataset->H0(), k);
    MinimalGeneralization best = SelectRegime(regimes, k, ToObjective(objective));
    GeneralizedTable table = GeneralizeTable(dataset->table, dataset->data,
                                             best.regime, keep_other_columns);
    std::ostringstream out;
    WriteGeneralizedCsv(out, table);
    std::string regime = regime_json
        ? RegimeReportJson(k, {best.regime})["regimes"][0].dump(2)
        : std::string();
    *csv = Dup(out.str());
    if (regime_json) *regime_json = Dup(regime);
  });
}

anontp_status anontp_barcode_json(const anontp_dataset* dataset,
                                  const anontp_filtration_options* options,
                                  char** json) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(json, "json");
    Barcode barcode = PersistentHomology(
        BuildFiltration(dataset->data, ToOptions(options)));
    *json = Dup(BarcodeJson(dataset->H0(), barcode).dump(2));
  });
}

anontp_status anontp_barcode_svg(const anontp_dataset* dataset,
                                 const anontp_filtration_options* options,
                                 const size_t* ks, size_t n_ks, char** svg) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(svg, "svg");
    Require(n_ks == 0 || ks != nullptr, "ks must not be null");
    Barcode barcode = PersistentHomology(
        BuildFiltration(dataset->data, ToOptions(options)));
    std::map<std::size_t, std::vector<Regime>> by_k;
    for (std::size_t i = 0; i < n_ks; ++i) {
      Require(ks[i] >= 1, "k must be at least 1");
      by_k[ks[i]] = ComputeRegimes(dataset->data, dataset->H0(), ks[i]);
    }
    *svg = Dup(RenderBarcodeSvg(dataset->H0(), barcode, by_k));
  });
}

anontp_status anontp_filtration_text(const anontp_dataset* dataset,
                                     const anontp_filtration_options* options,
                                     char** text) {
  return Guard([&] {
    NotNull(dataset, "dataset");
    NotNull(text, "text");
    std::ostringstream out;
    WriteFiltration(out, BuildFiltration(dataset->data, ToOptions(options)));
    *text = Dup(out.str());
  });
}

anontp_status anontp_categorical_load(const char* csv_path,
                                      const char* trees_path,
                                      const char* const* quasi, size_t n_quasi,
                                      anontp_categorical** out) {
  return Guard([&] {
    NotNull(csv_path, "csv_path");
    NotNull(trees_path, "trees_path");
    NotNull(out, "out");
    *out = MakeCategorical(ReadCsvFile(csv_path), LoadTreeFile(trees_path),
                           quasi, n_quasi);
  });
}

anontp_status anontp_categorical_from_text(const char* csv_text,
                                           const char* trees_json,
                                           const char* const* quasi,
                                           size_t n_quasi,
                                           anontp_categorical** out) {
  return Guard([&] {
    NotNull(csv_text, "csv_text");
    NotNull(trees_json, "trees_json");
    NotNull(out, "out");
    std::istringstream in(csv_text);
    *out = MakeCategorical(ReadCsv(in), ParseTrees(trees_json), quasi, n_quasi);
  });
}

void anontp_categorical_free(anontp_categorical* data) { delete data; }

size_t anontp_categorical_rows(const anontp_categorical* data) {
  return data ? data->rows.size() : 0;
}

size_t anontp_categorical_attributes(const anontp_categorical* data) {
  return data ? data->trees.size() : 0;
}

anontp_status anontp_generalize_value(const anontp_categorical* data,
                                      const char* attribute, const char* leaf,
                                      int level, char** node) {
  return Guard([&] {
    NotNull(data, "data");
    NotNull(attribute, "attribute");
    NotNull(leaf, "leaf");
    NotNull(node, "node");
    for (const auto& t : data->trees) {
      if (t.attribute() == attribute) {
        *node = Dup(t.Generalize(leaf, level));
        return;
      }
    }
    Fail(ErrorCode::kInput, std::string("unknown attribute '") + attribute +
                                "'");
  });
}

anontp_status anontp_lattice_search_json(const anontp_categorical* data,
                                         size_t k, anontp_strategy strategy,
                                         unsigned threads, char** json) {
  return Guard([&] {
    NotNull(data, "data");
    NotNull(json, "json");
    const SearchStrategy s = strategy == ANONTP_EXHAUSTIVE
                                 ? SearchStrategy::kExhaustive
                                 : SearchStrategy::kLowerThenUpper;
    LatticeSearchResult result =
        LatticeSearch(data->rows, data->trees, k, s, threads);
    *json = Dup(LatticeReportJson(k, data->trees, result).dump(2));
  });
}

anontp_status anontp_chain_sweep_json(const anontp_categorical* data,
                                      const int* levels, size_t path_len,
                                      size_t k, char** json) {
  return Guard([&] {
    NotNull(data, "data");
    NotNull(json, "json");
    Require(path_len >= 1 && levels != nullptr, "path must not be empty");
    const std::size_t d = data->trees.size();
    std::vector<Levels> path(path_len, Levels(d));
    for (std::size_t j = 0; j < path_len; ++j) {
      for (std::size_t a = 0; a < d; ++a) {
        path[j][a] = levels[j * d + a];
        Require(path[j][a] >= 0 && path[j][a] <= data->trees[a].height(),
                "chain level out of range");
      }
    }
    LatticeSearchResult result;
    result.chains.push_back(ChainSweep(data->rows, data->trees, path, k));
    const ChainReport& c = result.chains.back();
    if (c.first_k_anonymous) {
      result.minimal_nodes.push_back(c.nodes[*c.first_k_anonymous].levels);
    }
    result.note = "single chain sweep";
    nlohmann::json out = LatticeReportJson(k, data->trees, result);
    out["strategy"] = "chain";
    *json = Dup(out.dump(2));
  });
}

}  // extern "C"
