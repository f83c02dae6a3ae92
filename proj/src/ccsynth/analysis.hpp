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

// Applications built on violation scores: windowed drift quantification,
// unsafe-tuple flagging and per-attribute responsibility for non-conformance.

#ifndef CCSYNTH_ANALYSIS_HPP_
#define CCSYNTH_ANALYSIS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ccsynth/core.hpp"
#include "ccsynth/semantics.hpp"

namespace ccsynth {

struct DriftSeries {
  std::size_t window_size = 0;
  std::vector<double> raw;         // mean violation per window
  std::vector<double> normalized;  // min-max scaled raw, all zero if flat
};

// Consecutive non-overlapping windows over `stream`. A trailing partial
// window is kept when it holds at least half a window. Throws
// kInvalidArgument (window_size == 0), kSchemaMismatch, kEmptyInput.
DriftSeries QuantifyDrift(const ConformanceProfile& profile,
                          const Dataset& stream, std::size_t window_size,
                          unsigned threads = 1);

// Min-max normalization into [0, 1]; all zeros when max == min.
std::vector<double> NormalizeSeries(std::span<const double> raw);

// flag[i] = violation(t_i) > threshold. Throws kInvalidThreshold unless
// threshold lies in [0, 1).
std::vector<bool> FlagUnsafe(const ConformanceProfile& profile,
                             const Dataset& dataset, double threshold);

inline constexpr double kDefaultTau = 0.01;

struct TupleResponsibility {
  // One entry per numeric attribute, in profile column order. Each is 0 or
  // 1 / (K + 1) where K counts the extra attributes reset to their training
  // mean before the violation drops to tau.
  std::vector<double> values;
  // Violation stayed above tau with every numeric attribute at its mean;
  // every attribute is then assigned 1 / numeric_width.
  bool non_convergent = false;
};

// Throws kInvalidThreshold (tau outside [0, 1)), kDimensionMismatch.
TupleResponsibility Responsibility(const ConformanceProfile& profile,
                                   const SchemaBinding& binding,
                                   std::span<const double> training_means,
                                   const TupleRef& tuple, double tau);

struct ResponsibilityReport {
  std::vector<std::string> attributes;
  std::vector<double> per_attribute;  // mean over tuples, in [0, 1]
  double tau = kDefaultTau;
  std::size_t non_convergent_tuples = 0;
  // rows x attributes, row-major; empty unless requested.
  std::vector<double> per_tuple;
};

// Throws kSchemaMismatch, kEmptyInput, kInvalidThreshold.
ResponsibilityReport AggregateResponsibility(
    const ConformanceProfile& profile, std::span<const double> training_means,
    const Dataset& dataset, double tau, bool keep_per_tuple = false);

}  // namespace ccsynth

#endif  // CCSYNTH_ANALYSIS_HPP_
