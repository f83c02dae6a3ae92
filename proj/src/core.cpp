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

#include "ccsynth/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "ccsynth/error.hpp"

namespace ccsynth {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kHeaderMismatch: return "HeaderMismatch";
    case ErrorCode::kNoUsableColumns: return "NoUsableColumns";
    case ErrorCode::kMalformedProfile: return "MalformedProfile";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kMissingAttribute: return "MissingAttribute";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kNoNumericColumns: return "NoNumericColumns";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kInvalidThreshold: return "InvalidThreshold";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

std::string_view ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kCategorical: return "categorical";
    case ColumnKind::kIgnored: return "ignored";
  }
  return "ignored";
}

std::optional<ColumnKind> ParseColumnKind(std::string_view name) {
  if (name == "numeric") return ColumnKind::kNumeric;
  if (name == "categorical") return ColumnKind::kCategorical;
  if (name == "ignored") return ColumnKind::kIgnored;
  return std::nullopt;
}

void ValidateSchema(const Schema& schema) {
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (!names.insert(schema[i].name).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate column name '" + schema[i].name + "'");
    }
    if (i > 0 && schema[i].index <= schema[i - 1].index) {
      throw Error(ErrorCode::kInvariantViolation,
                  "column indices must be strictly increasing");
    }
  }
}

std::vector<std::string> ColumnNames(const Schema& schema, ColumnKind kind) {
  std::vector<std::string> out;
  for (const auto& column : schema) {
    if (column.kind == kind) out.push_back(column.name);
  }
  return out;
}

Dataset::Dataset(Schema schema, std::vector<double> numeric,
                 std::vector<std::string> categorical, std::size_t rows,
                 std::vector<std::uint8_t> incomplete,
                 std::vector<std::size_t> source_rows,
                 std::size_t skipped_rows)
    : schema_(std::move(schema)),
      numeric_(std::move(numeric)),
      categorical_(std::move(categorical)),
      incomplete_(std::move(incomplete)),
      source_rows_(std::move(source_rows)),
      rows_(rows),
      skipped_rows_(skipped_rows) {
  ValidateSchema(schema_);
  for (const auto& column : schema_) {
    if (column.kind == ColumnKind::kNumeric) ++numeric_width_;
    if (column.kind == ColumnKind::kCategorical) ++categorical_width_;
  }
  if (numeric_.size() != rows_ * numeric_width_) {
    throw Error(ErrorCode::kInvariantViolation,
                "numeric cell count does not match rows x numeric columns");
  }
  if (categorical_.size() != rows_ * categorical_width_) {
    throw Error(ErrorCode::kInvariantViolation,
                "categorical cell count does not match rows x categorical "
                "columns");
  }
  if (!incomplete_.empty() && incomplete_.size() != rows_) {
    throw Error(ErrorCode::kInvariantViolation, "incomplete flags length");
  }
  if (!source_rows_.empty() && source_rows_.size() != rows_) {
    throw Error(ErrorCode::kInvariantViolation, "source row length");
  }
  for (double v : numeric_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "dataset contains a non-finite cell");
    }
  }
}

std::span<const double> Dataset::numeric_row(std::size_t row) const {
  return std::span<const double>(numeric_).subspan(row * numeric_width_,
                                                   numeric_width_);
}

std::span<const std::string> Dataset::categorical_row(std::size_t row) const {
  return std::span<const std::string>(categorical_)
      .subspan(row * categorical_width_, categorical_width_);
}

std::size_t Dataset::incomplete_rows() const {
  return static_cast<std::size_t>(
      std::count(incomplete_.begin(), incomplete_.end(), std::uint8_t{1}));
}

TupleRef Dataset::tuple(std::size_t row) const {
  return TupleRef{numeric_row(row), categorical_row(row), incomplete(row)};
}

std::vector<std::string> Dataset::numeric_names() const {
  return ColumnNames(schema_, ColumnKind::kNumeric);
}

std::vector<std::string> Dataset::categorical_names() const {
  return ColumnNames(schema_, ColumnKind::kCategorical);
}

std::optional<std::size_t> Dataset::categorical_position(
    std::string_view name) const {
  std::size_t position = 0;
  for (const auto& column : schema_) {
    if (column.kind != ColumnKind::kCategorical) continue;
    if (column.name == name) return position;
    ++position;
  }
  return std::nullopt;
}

double Projection::Apply(std::span<const double> numeric) const {
  if (numeric.size() != coefficients.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tuple width " + std::to_string(numeric.size()) +
                    " does not match projection width " +
                    std::to_string(coefficients.size()));
  }
  double value = 0.0;
  for (std::size_t j = 0; j < numeric.size(); ++j) {
    value += coefficients[j] * numeric[j];
  }
  return value;
}

namespace {

[[noreturn]] void Violated(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

bool Close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void ValidateSimpleConstraint(const SimpleConstraint& constraint,
                              std::size_t numeric_width, double c_factor) {
  if (constraint.conjuncts.empty()) Violated("simple constraint is empty");
  double gamma_sum = 0.0;
  for (const auto& c : constraint.conjuncts) {
    const auto& coefficients = c.projection.coefficients;
    if (coefficients.size() != numeric_width) {
      Violated("projection width does not match numeric column count");
    }
    double norm2 = 0.0;
    for (double w : coefficients) {
      if (!std::isfinite(w)) Violated("non-finite coefficient");
      norm2 += w * w;
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kUnitNormTolerance) {
      Violated("projection coefficients are not unit norm");
    }
    if (!std::isfinite(c.projection.mean) ||
        !std::isfinite(c.projection.stddev) || c.projection.stddev < 0.0) {
      Violated("projection stddev must be finite and non-negative");
    }
    if (!std::isfinite(c.lb) || !std::isfinite(c.ub) || c.lb > c.ub) {
      Violated("bounds must satisfy lb <= ub");
    }
    if (!Close(c.lb, c.projection.mean - c_factor * c.projection.stddev) ||
        !Close(c.ub, c.projection.mean + c_factor * c.projection.stddev)) {
      Violated("bounds are not mean -/+ c_factor * stddev");
    }
    if (!std::isfinite(c.alpha) || c.alpha <= 0.0) {
      Violated("alpha must be positive");
    }
    if (!(c.gamma > 0.0 && c.gamma <= 1.0)) {
      Violated("gamma must lie in (0, 1]");
    }
    gamma_sum += c.gamma;
  }
  if (std::abs(gamma_sum - 1.0) > kGammaSumTolerance) {
    Violated("gammas do not sum to one");
  }
}

void ValidateProfile(const ConformanceProfile& profile) {
  if (profile.format_version != kProfileFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "unsupported profile format_version " +
                    std::to_string(profile.format_version));
  }
  ValidateSchema(profile.schema);
  if (!(profile.c_factor > 0.0) || !std::isfinite(profile.c_factor)) {
    Violated("c_factor must be positive");
  }
  const std::size_t width = profile.numeric_names().size();
  if (width == 0) Violated("profile has no numeric columns");
  ValidateSimpleConstraint(profile.global, width, profile.c_factor);
  if (profile.training_means.size() != width) {
    Violated("training_means length does not match numeric column count");
  }
  for (double m : profile.training_means) {
    if (!std::isfinite(m)) Violated("non-finite training mean");
  }
  std::set<std::string_view> seen;
  for (const auto& d : profile.disjunctive) {
    const bool categorical = std::any_of(
        profile.schema.begin(), profile.schema.end(), [&](const auto& c) {
          return c.name == d.attribute && c.kind == ColumnKind::kCategorical;
        });
    if (!categorical) {
      Violated("disjunctive attribute '" + d.attribute +
               "' is not a categorical column");
    }
    if (!seen.insert(d.attribute).second) {
      Violated("duplicate disjunctive attribute '" + d.attribute + "'");
    }
    for (const auto& [value, branch] : d.branches) {
      if (!d.trained_row_counts.contains(value)) {
        Violated("branch '" + value + "' has no trained row count");
      }
      ValidateSimpleConstraint(branch, width, profile.c_factor);
    }
  }
}

}  // namespace ccsynth
