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

// Quantitative violation semantics. A bounded constraint scores a tuple with
// eta(alpha * excess), eta(z) = 1 - exp(-z), where excess is the distance of
// F(t) outside [lb, ub]. Simple constraints take the gamma-weighted sum;
// a disjunctive constraint evaluates the branch selected by the tuple's
// category and scores 1 when no branch applies.

#ifndef CCSYNTH_SEMANTICS_HPP_
#define CCSYNTH_SEMANTICS_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ccsynth/core.hpp"

namespace ccsynth {

struct EvaluationOptions {
  bool keep_per_constraint = false;
  // Tuples are scored in contiguous blocks; output order and values do not
  // depend on the thread count.
  unsigned threads = 1;
};

// The global constraint and every disjunctive constraint contribute with the
// same weight 1 / (1 + d).
inline constexpr std::string_view kOuterWeighting = "equal";

// Throws kDimensionMismatch, kNonFinite.
double ViolationBounded(const BoundedConstraint& constraint,
                        std::span<const double> numeric);

double ViolationSimple(const SimpleConstraint& constraint,
                       std::span<const double> numeric);

// Branch for `value`, or nullptr when no branch matches (undefined).
const SimpleConstraint* Simp(const DisjunctiveConstraint& constraint,
                             std::string_view value);

// Looks the attribute up in `schema`; throws kMissingAttribute when the
// tuple's schema has no such categorical column.
const SimpleConstraint* Simp(const DisjunctiveConstraint& constraint,
                             const Schema& schema, const TupleRef& tuple);

// Positions of the profile's columns inside a dataset schema, checked once
// before any tuple is evaluated.
class SchemaBinding {
 public:
  // Throws kSchemaMismatch when the numeric columns differ in name, count or
  // order, or a disjunctive attribute is not a categorical column of
  // `schema`.
  static SchemaBinding Bind(const ConformanceProfile& profile,
                            const Schema& schema);

  std::size_t numeric_width() const { return numeric_width_; }
  // Index into TupleRef::categorical for disjunctive constraint k.
  std::size_t category_position(std::size_t k) const {
    return category_positions_[k];
  }

 private:
  std::size_t numeric_width_ = 0;
  std::vector<std::size_t> category_positions_;
};

// Equal-weight average of the global constraint and each disjunctive
// constraint; incomplete tuples score 1. Throws kNonFinite,
// kDimensionMismatch.
double ViolationProfile(const ConformanceProfile& profile,
                        const SchemaBinding& binding, const TupleRef& tuple);

// Throws kSchemaMismatch, kEmptyInput.
ViolationReport ViolationDataset(const ConformanceProfile& profile,
                                 const Dataset& dataset,
                                 const EvaluationOptions& options = {});

}  // namespace ccsynth

#endif  // CCSYNTH_SEMANTICS_HPP_
