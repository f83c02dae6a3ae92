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

// Domain types shared by every module: column-typed datasets and conformance
// profiles (projections, bounded constraints, and their conjunctions and
// categorical disjunctions).

#ifndef CCSYNTH_CORE_HPP_
#define CCSYNTH_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccsynth {

enum class ColumnKind { kNumeric, kCategorical, kIgnored };

std::string_view ColumnKindName(ColumnKind kind);
std::optional<ColumnKind> ParseColumnKind(std::string_view name);

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::size_t index = 0;  // ordinal position in the source table

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

using Schema = std::vector<ColumnSchema>;

// Throws kInvariantViolation on duplicate names or out-of-order indices.
void ValidateSchema(const Schema& schema);

std::vector<std::string> ColumnNames(const Schema& schema, ColumnKind kind);

// One row of a Dataset. `numeric` follows the schema's numeric columns in
// order, `categorical` the categorical columns in order.
struct TupleRef {
  std::span<const double> numeric;
  std::span<const std::string> categorical;
  // Set for rows retained at ingestion despite an unparseable numeric cell.
  bool incomplete = false;
};

// Immutable column-typed table. Numeric cells are stored row-major
// (rows x numeric_width), categorical cells row-major (rows x
// categorical_width).
class Dataset {
 public:
  Dataset() = default;

  // `incomplete` and `source_rows` may be empty (all rows complete, source
  // row i == i). Throws kInvariantViolation when shapes disagree or a numeric
  // cell is not finite.
  Dataset(Schema schema, std::vector<double> numeric,
          std::vector<std::string> categorical, std::size_t rows,
          std::vector<std::uint8_t> incomplete = {},
          std::vector<std::size_t> source_rows = {},
          std::size_t skipped_rows = 0);

  const Schema& schema() const { return schema_; }
  std::size_t rows() const { return rows_; }
  std::size_t numeric_width() const { return numeric_width_; }
  std::size_t categorical_width() const { return categorical_width_; }

  std::span<const double> numeric_data() const { return numeric_; }
  std::span<const double> numeric_row(std::size_t row) const;
  std::span<const std::string> categorical_row(std::size_t row) const;
  bool incomplete(std::size_t row) const {
    return !incomplete_.empty() && incomplete_[row] != 0;
  }
  std::size_t incomplete_rows() const;
  TupleRef tuple(std::size_t row) const;

  // Zero-based data-row index in the source file (header excluded).
  std::size_t source_row(std::size_t row) const {
    return source_rows_.empty() ? row : source_rows_[row];
  }
  // Rows dropped at ingestion because a numeric cell could not be parsed.
  std::size_t skipped_rows() const { return skipped_rows_; }

  std::vector<std::string> numeric_names() const;
  std::vector<std::string> categorical_names() const;

  // Position of `name` among the categorical columns, if it is one.
  std::optional<std::size_t> categorical_position(std::string_view name) const;

 private:
  Schema schema_;
  std::vector<double> numeric_;
  std::vector<std::string> categorical_;
  std::vector<std::uint8_t> incomplete_;
  std::vector<std::size_t> source_rows_;
  std::size_t rows_ = 0;
  std::size_t numeric_width_ = 0;
  std::size_t categorical_width_ = 0;
  std::size_t skipped_rows_ = 0;
};

// Row-major read-only view of an n x m real matrix.
struct MatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t i) const {
    return data.subspan(i * cols, cols);
  }
};

// A linear map over the numeric attributes with unit-norm coefficients,
// together with its mean and population standard deviation on the training
// data.
struct Projection {
  std::vector<double> coefficients;
  double mean = 0.0;
  double stddev = 0.0;

  double Apply(std::span<const double> numeric) const;

  friend bool operator==(const Projection&, const Projection&) = default;
};

// lb <= F(A) <= ub with scaling factor alpha and importance weight gamma.
struct BoundedConstraint {
  Projection projection;
  double lb = 0.0;
  double ub = 0.0;
  double alpha = 1.0;
  double gamma = 1.0;

  friend bool operator==(const BoundedConstraint&,
                         const BoundedConstraint&) = default;
};

// Weighted conjunction of bounded constraints; gammas sum to one.
struct SimpleConstraint {
  std::vector<BoundedConstraint> conjuncts;

  friend bool operator==(const SimpleConstraint&,
                         const SimpleConstraint&) = default;
};

// Switch on a categorical attribute: a tuple with attribute value c must
// satisfy branches[c]. Values seen in training but too rare to learn from are
// present in trained_row_counts only.
struct DisjunctiveConstraint {
  std::string attribute;
  std::map<std::string, SimpleConstraint> branches;
  std::map<std::string, std::size_t> trained_row_counts;

  friend bool operator==(const DisjunctiveConstraint&,
                         const DisjunctiveConstraint&) = default;
};

inline constexpr int kProfileFormatVersion = 1;

struct ConformanceProfile {
  Schema schema;
  SimpleConstraint global;
  std::vector<DisjunctiveConstraint> disjunctive;
  double c_factor = 4.0;
  int format_version = kProfileFormatVersion;
  // Per numeric column mean over the training rows; the intervention values
  // used by responsibility analysis.
  std::vector<double> training_means;

  std::vector<std::string> numeric_names() const {
    return ColumnNames(schema, ColumnKind::kNumeric);
  }

  friend bool operator==(const ConformanceProfile&,
                         const ConformanceProfile&) = default;
};

// Tolerances used by ValidateProfile.
inline constexpr double kUnitNormTolerance = 1e-9;
inline constexpr double kGammaSumTolerance = 1e-9;

void ValidateSimpleConstraint(const SimpleConstraint& constraint,
                              std::size_t numeric_width, double c_factor);

// Throws kInvariantViolation if any type invariant does not hold.
void ValidateProfile(const ConformanceProfile& profile);

struct ViolationReport {
  std::vector<double> per_tuple;
  // rows x global-conjunct count, row-major; empty unless requested.
  std::vector<double> per_constraint;
  std::size_t constraint_count = 0;
  double mean_violation = 0.0;
};

}  // namespace ccsynth

#endif  // CCSYNTH_CORE_HPP_
