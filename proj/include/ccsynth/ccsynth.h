/*
 * Copyright 2026 The ccsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ccsynth conformance-constraint library.
 *
 * Objects are opaque handles created by ccs_*_load / ccs_*_learn / ccs_score
 * style calls and released with the matching *_free function. Every fallible
 * call returns a ccs_status; on failure a description is available from
 * ccs_last_error() on the calling thread until the next failing call.
 * Handles are immutable once created and may be shared between threads. */

#ifndef CCSYNTH_CCSYNTH_H_
#define CCSYNTH_CCSYNTH_H_

#include <stddef.h>

#if defined(CCS_BUILDING_LIBRARY)
#define CCS_API __attribute__((visibility("default")))
#else
#define CCS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccs_status {
  CCS_OK = 0,
  CCS_ERR_INVALID_ARGUMENT = 1,
  CCS_ERR_FILE_NOT_FOUND = 2,
  CCS_ERR_EMPTY_FILE = 3,
  CCS_ERR_HEADER_MISMATCH = 4,
  CCS_ERR_NO_USABLE_COLUMNS = 5,
  CCS_ERR_MALFORMED_PROFILE = 6,
  CCS_ERR_VERSION_MISMATCH = 7,
  CCS_ERR_INVARIANT_VIOLATION = 8,
  CCS_ERR_DIMENSION_MISMATCH = 9,
  CCS_ERR_SCHEMA_MISMATCH = 10,
  CCS_ERR_MISSING_ATTRIBUTE = 11,
  CCS_ERR_TOO_FEW_ROWS = 12,
  CCS_ERR_NO_NUMERIC_COLUMNS = 13,
  CCS_ERR_DEGENERATE_DATA = 14,
  CCS_ERR_EMPTY_INPUT = 15,
  CCS_ERR_NON_FINITE = 16,
  CCS_ERR_NOT_SYMMETRIC = 17,
  CCS_ERR_INVALID_THRESHOLD = 18,
  CCS_ERR_IO = 19,
  CCS_ERR_INTERNAL = 20
} ccs_status;

typedef enum ccs_column_kind {
  CCS_COLUMN_NUMERIC = 0,
  CCS_COLUMN_CATEGORICAL = 1,
  CCS_COLUMN_IGNORED = 2
} ccs_column_kind;

typedef struct ccs_dataset ccs_dataset;
typedef struct ccs_profile ccs_profile;
typedef struct ccs_report ccs_report;
typedef struct ccs_drift ccs_drift;
typedef struct ccs_responsibility ccs_responsibility;

CCS_API const char* ccs_status_name(ccs_status status);
CCS_API const char* ccs_last_error(void);
CCS_API const char* ccs_version(void);

/* ---- datasets ---------------------------------------------------------- */

typedef struct ccs_csv_options {
  const char* const* exclude; /* column names marked ignored */
  size_t exclude_count;
  const char* const* override_names; /* explicit column kinds */
  const ccs_column_kind* override_kinds;
  size_t override_count;
  int retain_bad_rows; /* keep rows with unparseable numerics, scored 1 */
} ccs_csv_options;

CCS_API void ccs_csv_options_init(ccs_csv_options* options);

/* Infers column kinds. options may be NULL. */
CCS_API ccs_status ccs_dataset_load_csv(const char* path,
                                        const ccs_csv_options* options,
                                        ccs_dataset** out);
/* Types columns from the profile's schema. */
CCS_API ccs_status ccs_dataset_load_csv_for_profile(const char* path,
                                                    const ccs_profile* profile,
                                                    int retain_bad_rows,
                                                    ccs_dataset** out);
/* Builds a numeric-only dataset from a row-major rows x cols matrix. */
CCS_API ccs_status ccs_dataset_from_matrix(const double* values, size_t rows,
                                           size_t cols,
                                           const char* const* column_names,
                                           ccs_dataset** out);
CCS_API void ccs_dataset_free(ccs_dataset* dataset);

CCS_API size_t ccs_dataset_rows(const ccs_dataset* dataset);
CCS_API size_t ccs_dataset_numeric_columns(const ccs_dataset* dataset);
CCS_API size_t ccs_dataset_categorical_columns(const ccs_dataset* dataset);
CCS_API size_t ccs_dataset_skipped_rows(const ccs_dataset* dataset);
CCS_API size_t ccs_dataset_incomplete_rows(const ccs_dataset* dataset);
/* Zero-based data-row index in the source file. */
CCS_API size_t ccs_dataset_source_row(const ccs_dataset* dataset, size_t row);

/* ---- profiles ---------------------------------------------------------- */

typedef struct ccs_synthesis_config {
  double c_factor;                   /* default 4 */
  size_t max_distinct_for_partition; /* default 50 */
  size_t min_partition_rows;         /* 0: max(20, 2 * (numeric + 1)) */
  double epsilon_sigma;              /* default 1e-9 */
  double epsilon_norm;               /* default 1e-9 */
  unsigned threads;                  /* default 1 */
} ccs_synthesis_config;

CCS_API void ccs_synthesis_config_init(ccs_synthesis_config* config);

/* config may be NULL for defaults. */
CCS_API ccs_status ccs_profile_learn(const ccs_dataset* dataset,
                                     const ccs_synthesis_config* config,
                                     ccs_profile** out);
CCS_API ccs_status ccs_profile_load(const char* path, ccs_profile** out);
CCS_API ccs_status ccs_profile_save(const ccs_profile* profile, const char* path);
/* *out_text is NUL terminated and released with ccs_string_free. */
CCS_API ccs_status ccs_profile_serialize(const ccs_profile* profile,
                                         char** out_text, size_t* out_length);
CCS_API ccs_status ccs_profile_deserialize(const char* text, size_t length,
                                           ccs_profile** out);
CCS_API void ccs_string_free(char* text);
CCS_API void ccs_profile_free(ccs_profile* profile);

CCS_API size_t ccs_profile_numeric_columns(const ccs_profile* profile);
/* Valid while the profile lives. */
CCS_API const char* ccs_profile_numeric_column_name(const ccs_profile* profile,
                                                    size_t index);
CCS_API size_t ccs_profile_global_conjuncts(const ccs_profile* profile);
CCS_API ccs_status ccs_profile_conjunct(const ccs_profile* profile, size_t index,
                                        double* stddev, double* lb, double* ub,
                                        double* gamma);
CCS_API size_t ccs_profile_disjunctive_count(const ccs_profile* profile);
CCS_API const char* ccs_profile_disjunctive_attribute(const ccs_profile* profile,
                                                      size_t index);
CCS_API size_t ccs_profile_disjunctive_branches(const ccs_profile* profile,
                                                size_t index);

/* ---- scoring ----------------------------------------------------------- */

CCS_API ccs_status ccs_score(const ccs_profile* profile,
                             const ccs_dataset* dataset,
                             int keep_per_constraint, unsigned threads,
                             ccs_report** out);
CCS_API void ccs_report_free(ccs_report* report);
CCS_API size_t ccs_report_rows(const ccs_report* report);
CCS_API double ccs_report_violation(const ccs_report* report, size_t row);
CCS_API double ccs_report_mean(const ccs_report* report);
/* Zero unless per-constraint scores were requested. */
CCS_API size_t ccs_report_constraints(const ccs_report* report);
CCS_API double ccs_report_constraint_violation(const ccs_report* report,
                                               size_t row, size_t constraint);

/* flags must hold ccs_dataset_rows(dataset) bytes; set to 1 when the
 * tuple's violation exceeds threshold. */
CCS_API ccs_status ccs_flag_unsafe(const ccs_profile* profile,
                                   const ccs_dataset* dataset, double threshold,
                                   unsigned char* flags, size_t flags_length);

/* ---- drift ------------------------------------------------------------- */

CCS_API ccs_status ccs_drift_compute(const ccs_profile* profile,
                                     const ccs_dataset* stream,
                                     size_t window_size, ccs_drift** out);
CCS_API void ccs_drift_free(ccs_drift* drift);
CCS_API size_t ccs_drift_windows(const ccs_drift* drift);
CCS_API double ccs_drift_raw(const ccs_drift* drift, size_t window);
CCS_API double ccs_drift_normalized(const ccs_drift* drift, size_t window);

/* ---- responsibility ---------------------------------------------------- */

/* Uses the training means stored in the profile. */
CCS_API ccs_status ccs_explain(const ccs_profile* profile,
                               const ccs_dataset* dataset, double tau,
                               ccs_responsibility** out);
CCS_API void ccs_responsibility_free(ccs_responsibility* report);
CCS_API size_t ccs_responsibility_attributes(const ccs_responsibility* report);
CCS_API const char* ccs_responsibility_name(const ccs_responsibility* report,
                                            size_t index);
CCS_API double ccs_responsibility_value(const ccs_responsibility* report,
                                        size_t index);
CCS_API size_t ccs_responsibility_non_convergent(
    const ccs_responsibility* report);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CCSYNTH_CCSYNTH_H_ */
