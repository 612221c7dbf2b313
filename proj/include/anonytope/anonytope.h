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

/* C interface to the anonytope library. Every call returns an anontp_status;
 * on failure anontp_last_error() describes the problem for the calling
 * thread. Strings handed out through char** parameters are owned by the
 * caller and released with anontp_free_string(). Handles are immutable after
 * construction and may be shared between threads. */

#ifndef ANONYTOPE_ANONYTOPE_H_
#define ANONYTOPE_ANONYTOPE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ANONYTOPE_BUILDING)
#define ANONTP_API __declspec(dllexport)
#else
#define ANONTP_API __declspec(dllimport)
#endif
#else
#define ANONTP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum anontp_status {
  ANONTP_OK = 0,
  ANONTP_ERROR_INPUT = 1,
  ANONTP_ERROR_INFEASIBLE = 2,
  ANONTP_ERROR_CONTRACT = 3,
  ANONTP_ERROR_SIZE = 4,
  ANONTP_ERROR_FILTRATION = 5,
  ANONTP_ERROR_INTERNAL = 6
} anontp_status;

typedef enum anontp_objective {
  ANONTP_SMALLEST_EPS = 0,
  ANONTP_MAX_CLASSES = 1
} anontp_objective;

typedef enum anontp_strategy {
  ANONTP_LOWER_THEN_UPPER = 0,
  ANONTP_EXHAUSTIVE = 1
} anontp_strategy;

typedef struct anontp_dataset anontp_dataset;
typedef struct anontp_categorical anontp_categorical;

typedef struct anontp_filtration_options {
  int dim_cap;
  unsigned threads;
  uint64_t max_simplices;
} anontp_filtration_options;

/* Column roles for CSV ingestion; arrays of column names. */
typedef struct anontp_columns {
  const char* const* quasi;
  size_t n_quasi;
  const char* const* identifiers;
  size_t n_identifiers;
  const char* const* sensitive;
  size_t n_sensitive;
} anontp_columns;

ANONTP_API const char* anontp_version(void);
ANONTP_API const char* anontp_last_error(void);
ANONTP_API void anontp_free_string(char* s);
ANONTP_API void anontp_filtration_options_default(
    anontp_filtration_options* options);

/* ---- numeric datasets ---- */

ANONTP_API anontp_status anontp_dataset_load_csv(const char* path,
                                                 const anontp_columns* columns,
                                                 anontp_dataset** out);
ANONTP_API anontp_status anontp_dataset_from_csv_text(
    const char* text, const anontp_columns* columns, anontp_dataset** out);
/* Row-major coordinates, n_rows x dims, in original units. */
ANONTP_API anontp_status anontp_dataset_from_points(const double* coords,
                                                    size_t n_rows, size_t dims,
                                                    anontp_dataset** out);
ANONTP_API void anontp_dataset_free(anontp_dataset* dataset);
ANONTP_API size_t anontp_dataset_rows(const anontp_dataset* dataset);
ANONTP_API size_t anontp_dataset_dims(const anontp_dataset* dataset);
/* Normalized coordinates of a zero-based row into out[dims]. */
ANONTP_API anontp_status anontp_dataset_point(const anontp_dataset* dataset,
                                              size_t row, double* out);

/* Smallest enclosing ball of n row-major points; center has `dims` slots. */
ANONTP_API anontp_status anontp_min_enclosing_ball(const double* coords,
                                                   size_t n, size_t dims,
                                                   double* center,
                                                   double* radius);

ANONTP_API anontp_status anontp_check(const anontp_dataset* dataset, double eps,
                                      size_t k, int* achieved,
                                      char** verdict_json);
ANONTP_API anontp_status anontp_regimes_json(const anontp_dataset* dataset,
                                             size_t k, char** json);
/* Regimes reconstructed from fixed-radius checks on an increasing grid, plus
 * the per-grid-point verdicts. */
ANONTP_API anontp_status anontp_grid_json(const anontp_dataset* dataset,
                                          size_t k, const double* grid,
                                          size_t n_grid, char** json);
ANONTP_API anontp_status anontp_minimal_epsilon(const anontp_dataset* dataset,
                                                size_t k,
                                                anontp_objective objective,
                                                double* eps,
                                                char** regime_json);
/* Regime closest to eps as JSON, or "null" when k exceeds the row count. */
ANONTP_API anontp_status anontp_nearest_regime_json(
    const anontp_dataset* dataset, size_t k, double eps, char** json);
ANONTP_API anontp_status anontp_anonymize_csv(const anontp_dataset* dataset,
                                              size_t k,
                                              anontp_objective objective,
                                              int keep_other_columns,
                                              char** csv, char** regime_json);

ANONTP_API anontp_status anontp_barcode_json(
    const anontp_dataset* dataset, const anontp_filtration_options* options,
    char** json);
ANONTP_API anontp_status anontp_barcode_svg(
    const anontp_dataset* dataset, const anontp_filtration_options* options,
    const size_t* ks, size_t n_ks, char** svg);
ANONTP_API anontp_status anontp_filtration_text(
    const anontp_dataset* dataset, const anontp_filtration_options* options,
    char** text);

/* ---- categorical data ---- */

/* Columns are matched to trees by attribute name; `quasi` may restrict the
 * attributes used (NULL/0 uses every tree). */
ANONTP_API anontp_status anontp_categorical_load(const char* csv_path,
                                                 const char* trees_path,
                                                 const char* const* quasi,
                                                 size_t n_quasi,
                                                 anontp_categorical** out);
ANONTP_API anontp_status anontp_categorical_from_text(
    const char* csv_text, const char* trees_json, const char* const* quasi,
    size_t n_quasi, anontp_categorical** out);
ANONTP_API void anontp_categorical_free(anontp_categorical* data);
ANONTP_API size_t anontp_categorical_rows(const anontp_categorical* data);
ANONTP_API size_t anontp_categorical_attributes(const anontp_categorical* data);

ANONTP_API anontp_status anontp_generalize_value(const anontp_categorical* data,
                                                 const char* attribute,
                                                 const char* leaf, int level,
                                                 char** node);
ANONTP_API anontp_status anontp_lattice_search_json(
    const anontp_categorical* data, size_t k, anontp_strategy strategy,
    unsigned threads, char** json);
/* Path given as path_len rows of per-attribute levels, row-major. */
ANONTP_API anontp_status anontp_chain_sweep_json(const anontp_categorical* data,
                                                 const int* levels,
                                                 size_t path_len, size_t k,
                                                 char** json);

#ifdef __cplusplus
}
#endif

#endif /* ANONYTOPE_ANONYTOPE_H_ */
