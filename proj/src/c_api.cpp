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

#include "ccsynth/ccsynth.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "ccsynth/analysis.hpp"
#include "ccsynth/core.hpp"
#include "ccsynth/csv.hpp"
#include "ccsynth/error.hpp"
#include "ccsynth/profile_io.hpp"
#include "ccsynth/semantics.hpp"
#include "ccsynth/synthesis.hpp"

struct ccs_dataset {
  ccsynth::Dataset dataset;
};

struct ccs_profile {
  ccsynth::ConformanceProfile profile;
  std::vector<std::string> numeric_names;
};

struct ccs_report {
  ccsynth::ViolationReport report;
};

struct ccs_drift {
  ccsynth::DriftSeries series;
};

struct ccs_responsibility {
  ccsynth::ResponsibilityReport report;
};

namespace {

thread_local std::string g_last_error;

ccs_status ToStatus(ccsynth::ErrorCode code) {
  using ccsynth::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return CCS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kFileNotFound: return CCS_ERR_FILE_NOT_FOUND;
    case ErrorCode::kEmptyFile: return CCS_ERR_EMPTY_FILE;
    case ErrorCode::kHeaderMismatch: return CCS_ERR_HEADER_MISMATCH;
    case ErrorCode::kNoUsableColumns: return CCS_ERR_NO_USABLE_COLUMNS;
    case ErrorCode::kMalformedProfile: return CCS_ERR_MALFORMED_PROFILE;
    case ErrorCode::kVersionMismatch: return CCS_ERR_VERSION_MISMATCH;
    case ErrorCode::kInvariantViolation: return CCS_ERR_INVARIANT_VIOLATION;
    case ErrorCode::kDimensionMismatch: return CCS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kSchemaMismatch: return CCS_ERR_SCHEMA_MISMATCH;
    case ErrorCode::kMissingAttribute: return CCS_ERR_MISSING_ATTRIBUTE;
    case ErrorCode::kTooFewRows: return CCS_ERR_TOO_FEW_ROWS;
    case ErrorCode::kNoNumericColumns: return CCS_ERR_NO_NUMERIC_COLUMNS;
    case ErrorCode::kDegenerateData: return CCS_ERR_DEGENERATE_DATA;
    case ErrorCode::kEmptyInput: return CCS_ERR_EMPTY_INPUT;
    case ErrorCode::kNonFinite: return CCS_ERR_NON_FINITE;
    case ErrorCode::kNotSymmetric: return CCS_ERR_NOT_SYMMETRIC;
    case ErrorCode::kInvalidThreshold: return CCS_ERR_INVALID_THRESHOLD;
    case ErrorCode::kIo: return CCS_ERR_IO;
  }
  return CCS_ERR_INTERNAL;
}

ccs_status Fail(ccs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
ccs_status Guard(Body&& body) {
  try {
    body();
    return CCS_OK;
  } catch (const ccsynth::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CCS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CCS_ERR_INTERNAL, e.what());
  }
}

ccs_status NullArgument(const char* what) {
  return Fail(CCS_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

ccs_profile* WrapProfile(ccsynth::ConformanceProfile profile) {
  auto out = std::make_unique<ccs_profile>();
  out->numeric_names = profile.numeric_names();
  out->profile = std::move(profile);
  return out.release();
}

ccsynth::ColumnKind ToKind(ccs_column_kind kind) {
  switch (kind) {
    case CCS_COLUMN_NUMERIC: return ccsynth::ColumnKind::kNumeric;
    case CCS_COLUMN_CATEGORICAL: return ccsynth::ColumnKind::kCategorical;
    case CCS_COLUMN_IGNORED: return ccsynth::ColumnKind::kIgnored;
  }
  throw ccsynth::Error(ccsynth::ErrorCode::kInvalidArgument, "unknown column kind");
}

}  // namespace

extern "C" {

const char* ccs_status_name(ccs_status status) {
  switch (status) {
    case CCS_OK: return "OK";
    case CCS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CCS_ERR_FILE_NOT_FOUND: return "FileNotFound";
    case CCS_ERR_EMPTY_FILE: return "EmptyFile";
    case CCS_ERR_HEADER_MISMATCH: return "HeaderMismatch";
    case CCS_ERR_NO_USABLE_COLUMNS: return "NoUsableColumns";
    case CCS_ERR_MALFORMED_PROFILE: return "MalformedProfile";
    case CCS_ERR_VERSION_MISMATCH: return "VersionMismatch";
    case CCS_ERR_INVARIANT_VIOLATION: return "InvariantViolation";
    case CCS_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case CCS_ERR_SCHEMA_MISMATCH: return "SchemaMismatch";
    case CCS_ERR_MISSING_ATTRIBUTE: return "MissingAttribute";
    case CCS_ERR_TOO_FEW_ROWS: return "TooFewRows";
    case CCS_ERR_NO_NUMERIC_COLUMNS: return "NoNumericColumns";
    case CCS_ERR_DEGENERATE_DATA: return "DegenerateData";
    case CCS_ERR_EMPTY_INPUT: return "EmptyInput";
    case CCS_ERR_NON_FINITE: return "NonFinite";
    case CCS_ERR_NOT_SYMMETRIC: return "NotSymmetric";
    case CCS_ERR_INVALID_THRESHOLD: return "InvalidThreshold";
    case CCS_ERR_IO: return "Io";
    case CCS_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* ccs_last_error(void) { return g_last_error.c_str(); }

const char* ccs_version(void) { return "1.0.0"; }

void ccs_csv_options_init(ccs_csv_options* options) {
  if (options != nullptr) std::memset(options, 0, sizeof(*options));
}

ccs_status ccs_dataset_load_csv(const char* path, const ccs_csv_options* options,
                                ccs_dataset** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    ccsynth::IngestOptions ingest;
    if (options != nullptr) {
      for (std::size_t i = 0; i < options->exclude_count; ++i) {
        ingest.exclude.emplace_back(options->exclude[i]);
      }
      for (std::size_t i = 0; i < options->override_count; ++i) {
        ingest.overrides[options->override_names[i]] =
            ToKind(options->override_kinds[i]);
      }
      ingest.retain_bad_rows = options->retain_bad_rows != 0;
    }
    *out = new ccs_dataset{ccsynth::IngestCsv(path, ingest)};
  });
}

ccs_status ccs_dataset_load_csv_for_profile(const char* path,
                                            const ccs_profile* profile,
                                            int retain_bad_rows,
                                            ccs_dataset** out) {
  if (path == nullptr) return NullArgument("path");
  if (profile == nullptr) return NullArgument("profile");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new ccs_dataset{
        ccsynth::IngestCsvForProfile(path, profile->profile, retain_bad_rows != 0)};
  });
}

ccs_status ccs_dataset_from_matrix(const double* values, size_t rows, size_t cols,
                                   const char* const* column_names,
                                   ccs_dataset** out) {
  if (values == nullptr && rows * cols > 0) return NullArgument("values");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    ccsynth::Schema schema;
    for (std::size_t j = 0; j < cols; ++j) {
      std::string name = column_names != nullptr ? std::string(column_names[j])
                                                 : "x" + std::to_string(j);
      schema.push_back({std::move(name), ccsynth::ColumnKind::kNumeric, j});
    }
    std::vector<double> data(values, values + rows * cols);
    *out = new ccs_dataset{
        ccsynth::Dataset(std::move(schema), std::move(data), {}, rows)};
  });
}

void ccs_dataset_free(ccs_dataset* dataset) { delete dataset; }

size_t ccs_dataset_rows(const ccs_dataset* d) { return d ? d->dataset.rows() : 0; }
size_t ccs_dataset_numeric_columns(const ccs_dataset* d) {
  return d ? d->dataset.numeric_width() : 0;
}
size_t ccs_dataset_categorical_columns(const ccs_dataset* d) {
  return d ? d->dataset.categorical_width() : 0;
}
size_t ccs_dataset_skipped_rows(const ccs_dataset* d) {
  return d ? d->dataset.skipped_rows() : 0;
}
size_t ccs_dataset_incomplete_rows(const ccs_dataset* d) {
  return d ? d->dataset.incomplete_rows() : 0;
}
size_t ccs_dataset_source_row(const ccs_dataset* d, size_t row) {
  return d && row < d->dataset.rows() ? d->dataset.source_row(row) : 0;
}

void ccs_synthesis_config_init(ccs_synthesis_config* config) {
  if (config == nullptr) return;
  const ccsynth::SynthesisConfig defaults;
  config->c_factor = defaults.c_factor;
  config->max_distinct_for_partition = defaults.max_distinct_for_partition;
  config->min_partition_rows = defaults.min_partition_rows;
  config->epsilon_sigma = defaults.epsilon_sigma;
  config->epsilon_norm = defaults.epsilon_norm;
  config->threads = defaults.threads;
}

ccs_status ccs_profile_learn(const ccs_dataset* dataset,
                             const ccs_synthesis_config* config,
                             ccs_profile** out) {
  if (dataset == nullptr) return NullArgument("dataset");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    ccsynth::SynthesisConfig cfg;
    if (config != nullptr) {
      cfg.c_factor = config->c_factor;
      cfg.max_distinct_for_partition = config->max_distinct_for_partition;
      cfg.min_partition_rows = config->min_partition_rows;
      cfg.epsilon_sigma = config->epsilon_sigma;
      cfg.epsilon_norm = config->epsilon_norm;
      cfg.threads = config->threads == 0 ? 1 : config->threads;
    }
    *out = WrapProfile(ccsynth::BuildProfile(dataset->dataset, cfg));
  });
}

ccs_status ccs_profile_load(const char* path, ccs_profile** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = WrapProfile(ccsynth::LoadProfile(path)); });
}

ccs_status ccs_profile_save(const ccs_profile* profile, const char* path) {
  if (profile == nullptr) return NullArgument("profile");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] { ccsynth::SaveProfile(profile->profile, path); });
}

ccs_status ccs_profile_serialize(const ccs_profile* profile, char** out_text,
                                 size_t* out_length) {
  if (profile == nullptr) return NullArgument("profile");
  if (out_text == nullptr) return NullArgument("out_text");
  *out_text = nullptr;
  return Guard([&] {
    const std::string text = ccsynth::SerializeProfile(profile->profile);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out_text = buffer;
    if (out_length != nullptr) *out_length = text.size();
  });
}

ccs_status ccs_profile_deserialize(const char* text, size_t length,
                                   ccs_profile** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = WrapProfile(ccsynth::DeserializeProfile(std::string_view(text, length)));
  });
}

void ccs_string_free(char* text) { std::free(text); }

void ccs_profile_free(ccs_profile* profile) { delete profile; }

size_t ccs_profile_numeric_columns(const ccs_profile* p) {
  return p ? p->numeric_names.size() : 0;
}

const char* ccs_profile_numeric_column_name(const ccs_profile* p, size_t index) {
  if (p == nullptr || index >= p->numeric_names.size()) return nullptr;
  return p->numeric_names[index].c_str();
}

size_t ccs_profile_global_conjuncts(const ccs_profile* p) {
  return p ? p->profile.global.conjuncts.size() : 0;
}

ccs_status ccs_profile_conjunct(const ccs_profile* p, size_t index, double* stddev,
                                double* lb, double* ub, double* gamma) {
  if (p == nullptr) return NullArgument("profile");
  if (index >= p->profile.global.conjuncts.size()) {
    return Fail(CCS_ERR_INVALID_ARGUMENT, "conjunct index out of range");
  }
  const auto& c = p->profile.global.conjuncts[index];
  if (stddev) *stddev = c.projection.stddev;
  if (lb) *lb = c.lb;
  if (ub) *ub = c.ub;
  if (gamma) *gamma = c.gamma;
  return CCS_OK;
}

size_t ccs_profile_disjunctive_count(const ccs_profile* p) {
  return p ? p->profile.disjunctive.size() : 0;
}

const char* ccs_profile_disjunctive_attribute(const ccs_profile* p, size_t index) {
  if (p == nullptr || index >= p->profile.disjunctive.size()) return nullptr;
  return p->profile.disjunctive[index].attribute.c_str();
}

size_t ccs_profile_disjunctive_branches(const ccs_profile* p, size_t index) {
  if (p == nullptr || index >= p->profile.disjunctive.size()) return 0;
  return p->profile.disjunctive[index].branches.size();
}

ccs_status ccs_score(const ccs_profile* profile, const ccs_dataset* dataset,
                     int keep_per_constraint, unsigned threads, ccs_report** out) {
  if (profile == nullptr) return NullArgument("profile");
  if (dataset == nullptr) return NullArgument("dataset");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    ccsynth::EvaluationOptions options;
    options.keep_per_constraint = keep_per_constraint != 0;
    options.threads = threads == 0 ? 1 : threads;
    *out = new ccs_report{
        ccsynth::ViolationDataset(profile->profile, dataset->dataset, options)};
  });
}

void ccs_report_free(ccs_report* report) { delete report; }

size_t ccs_report_rows(const ccs_report* r) {
  return r ? r->report.per_tuple.size() : 0;
}

double ccs_report_violation(const ccs_report* r, size_t row) {
  return r && row < r->report.per_tuple.size() ? r->report.per_tuple[row] : 0.0;
}

double ccs_report_mean(const ccs_report* r) {
  return r ? r->report.mean_violation : 0.0;
}

size_t ccs_report_constraints(const ccs_report* r) {
  return r ? r->report.constraint_count : 0;
}

double ccs_report_constraint_violation(const ccs_report* r, size_t row,
                                       size_t constraint) {
  if (r == nullptr || constraint >= r->report.constraint_count ||
      row >= r->report.per_tuple.size()) {
    return 0.0;
  }
  return r->report.per_constraint[row * r->report.constraint_count + constraint];
}

ccs_status ccs_flag_unsafe(const ccs_profile* profile, const ccs_dataset* dataset,
                           double threshold, unsigned char* flags,
                           size_t flags_length) {
  if (profile == nullptr) return NullArgument("profile");
  if (dataset == nullptr) return NullArgument("dataset");
  if (flags == nullptr && dataset->dataset.rows() > 0) return NullArgument("flags");
  if (flags_length < dataset->dataset.rows()) {
    return Fail(CCS_ERR_INVALID_ARGUMENT, "flags buffer shorter than dataset");
  }
  return Guard([&] {
    const auto result =
        ccsynth::FlagUnsafe(profile->profile, dataset->dataset, threshold);
    for (std::size_t i = 0; i < result.size(); ++i) flags[i] = result[i] ? 1 : 0;
  });
}

ccs_status ccs_drift_compute(const ccs_profile* profile, const ccs_dataset* stream,
                             size_t window_size, ccs_drift** out) {
  if (profile == nullptr) return NullArgument("profile");
  if (stream == nullptr) return NullArgument("stream");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new ccs_drift{
        ccsynth::QuantifyDrift(profile->profile, stream->dataset, window_size)};
  });
}

void ccs_drift_free(ccs_drift* drift) { delete drift; }

size_t ccs_drift_windows(const ccs_drift* d) { return d ? d->series.raw.size() : 0; }

double ccs_drift_raw(const ccs_drift* d, size_t window) {
  return d && window < d->series.raw.size() ? d->series.raw[window] : 0.0;
}

double ccs_drift_normalized(const ccs_drift* d, size_t window) {
  return d && window < d->series.normalized.size() ? d->series.normalized[window]
                                                   : 0.0;
}

ccs_status ccs_explain(const ccs_profile* profile, const ccs_dataset* dataset,
                       double tau, ccs_responsibility** out) {
  if (profile == nullptr) return NullArgument("profile");
  if (dataset == nullptr) return NullArgument("dataset");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new ccs_responsibility{ccsynth::AggregateResponsibility(
        profile->profile, profile->profile.training_means, dataset->dataset, tau)};
  });
}

void ccs_responsibility_free(ccs_responsibility* report) { delete report; }

size_t ccs_responsibility_attributes(const ccs_responsibility* r) {
  return r ? r->report.attributes.size() : 0;
}

const char* ccs_responsibility_name(const ccs_responsibility* r, size_t index) {
  if (r == nullptr || index >= r->report.attributes.size()) return nullptr;
  return r->report.attributes[index].c_str();
}

double ccs_responsibility_value(const ccs_responsibility* r, size_t index) {
  return r && index < r->report.per_attribute.size() ? r->report.per_attribute[index]
                                                     : 0.0;
}

size_t ccs_responsibility_non_convergent(const ccs_responsibility* r) {
  return r ? r->report.non_convergent_tuples : 0;
}

}  // extern "C"
