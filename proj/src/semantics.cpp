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

#include "ccsynth/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "ccsynth/error.hpp"

namespace ccsynth {

double ViolationBounded(const BoundedConstraint& constraint,
                        std::span<const double> numeric) {
  for (double v : numeric) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "tuple has a non-finite value");
    }
  }
  const double f = constraint.projection.Apply(numeric);
  const double excess = std::max({0.0, f - constraint.ub, constraint.lb - f});
  if (excess == 0.0) return 0.0;
  // Saturate just below one; a finite deviation never reaches full violation.
  constexpr double kBelowOne = 1.0 - 0x1p-53;
  return std::min(-std::expm1(-constraint.alpha * excess), kBelowOne);
}

double ViolationSimple(const SimpleConstraint& constraint,
                       std::span<const double> numeric) {
  double total = 0.0;
  for (const auto& c : constraint.conjuncts) {
    total += c.gamma * ViolationBounded(c, numeric);
  }
  return std::clamp(total, 0.0, 1.0);
}

const SimpleConstraint* Simp(const DisjunctiveConstraint& constraint,
                             std::string_view value) {
  auto it = constraint.branches.find(std::string(value));
  return it == constraint.branches.end() ? nullptr : &it->second;
}

const SimpleConstraint* Simp(const DisjunctiveConstraint& constraint,
                             const Schema& schema, const TupleRef& tuple) {
  std::size_t position = 0;
  for (const auto& column : schema) {
    if (column.kind != ColumnKind::kCategorical) continue;
    if (column.name == constraint.attribute) {
      if (position >= tuple.categorical.size()) break;
      return Simp(constraint, tuple.categorical[position]);
    }
    ++position;
  }
  throw Error(ErrorCode::kMissingAttribute,
              "tuple has no categorical attribute '" + constraint.attribute + "'");
}

SchemaBinding SchemaBinding::Bind(const ConformanceProfile& profile,
                                  const Schema& schema) {
  const auto expected = profile.numeric_names();
  const auto actual = ColumnNames(schema, ColumnKind::kNumeric);
  if (expected != actual) {
    std::string want, got;
    for (const auto& n : expected) want += (want.empty() ? "" : ",") + n;
    for (const auto& n : actual) got += (got.empty() ? "" : ",") + n;
    throw Error(ErrorCode::kSchemaMismatch,
                "numeric columns [" + got + "] do not match profile [" + want +
                    "]");
  }
  const auto categorical = ColumnNames(schema, ColumnKind::kCategorical);
  SchemaBinding binding;
  binding.numeric_width_ = expected.size();
  for (const auto& d : profile.disjunctive) {
    auto it = std::find(categorical.begin(), categorical.end(), d.attribute);
    if (it == categorical.end()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "categorical column '" + d.attribute +
                      "' required by the profile is missing");
    }
    binding.category_positions_.push_back(
        static_cast<std::size_t>(it - categorical.begin()));
  }
  return binding;
}

double ViolationProfile(const ConformanceProfile& profile,
                        const SchemaBinding& binding, const TupleRef& tuple) {
  if (tuple.incomplete) return 1.0;
  if (tuple.numeric.size() != binding.numeric_width()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tuple numeric width does not match profile");
  }
  double total = ViolationSimple(profile.global, tuple.numeric);
  for (std::size_t k = 0; k < profile.disjunctive.size(); ++k) {
    const std::size_t position = binding.category_position(k);
    if (position >= tuple.categorical.size()) {
      throw Error(ErrorCode::kMissingAttribute,
                  "tuple lacks attribute '" + profile.disjunctive[k].attribute +
                      "'");
    }
    const SimpleConstraint* branch =
        Simp(profile.disjunctive[k], tuple.categorical[position]);
    total += branch == nullptr ? 1.0 : ViolationSimple(*branch, tuple.numeric);
  }
  return std::clamp(total / static_cast<double>(1 + profile.disjunctive.size()),
                    0.0, 1.0);
}

ViolationReport ViolationDataset(const ConformanceProfile& profile,
                                 const Dataset& dataset,
                                 const EvaluationOptions& options) {
  const SchemaBinding binding = SchemaBinding::Bind(profile, dataset.schema());
  const std::size_t n = dataset.rows();
  if (n == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot score an empty dataset");
  }
  ViolationReport report;
  report.per_tuple.assign(n, 0.0);
  const std::size_t k_count = profile.global.conjuncts.size();
  if (options.keep_per_constraint) {
    report.constraint_count = k_count;
    report.per_constraint.assign(n * k_count, 0.0);
  }

  auto score = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const TupleRef tuple = dataset.tuple(i);
      report.per_tuple[i] = ViolationProfile(profile, binding, tuple);
      if (!options.keep_per_constraint) continue;
      for (std::size_t k = 0; k < k_count; ++k) {
        report.per_constraint[i * k_count + k] =
            tuple.incomplete
                ? 1.0
                : ViolationBounded(profile.global.conjuncts[k], tuple.numeric);
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, n));
  if (threads == 1) {
    score(0, n);
  } else {
    const std::size_t block = (n + threads - 1) / threads;
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          score(std::min(n, t * block), std::min(n, (t + 1) * block));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Sequential sum keeps the mean independent of the thread count.
  double sum = 0.0;
  for (double v : report.per_tuple) sum += v;
  report.mean_violation = sum / static_cast<double>(n);
  return report;
}

}  // namespace ccsynth
