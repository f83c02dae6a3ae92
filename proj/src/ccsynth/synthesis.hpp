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

// Learning conformance profiles from training data. Projections come from
// the eigenvectors of the Gram matrix of the constant-augmented numeric data;
// each becomes a bounded constraint mean -/+ C * stddev weighted by
// 1 / log(2 + stddev). Categorical attributes with few distinct values
// additionally yield one simple constraint per value.

#ifndef CCSYNTH_SYNTHESIS_HPP_
#define CCSYNTH_SYNTHESIS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ccsynth/core.hpp"
#include "ccsynth/numeric.hpp"

namespace ccsynth {

struct SynthesisConfig {
  double c_factor = 4.0;
  std::size_t max_distinct_for_partition = 50;
  // 0 selects max(20, 2 * (numeric_width + 1)).
  std::size_t min_partition_rows = 0;
  double epsilon_sigma = 1e-9;
  double epsilon_norm = 1e-9;
  // Worker threads for Gram accumulation. Results do not depend on it beyond
  // floating-point summation order, which is fixed per thread count.
  unsigned threads = 1;

  std::size_t EffectiveMinPartitionRows(std::size_t numeric_width) const;
};

// Throws kInvalidArgument.
void ValidateConfig(const SynthesisConfig& config);

struct WeightedProjection {
  Projection projection;
  double gamma = 0.0;  // unnormalized importance, 1 / log(2 + stddev)
};

// Unit coefficient vectors from the eigenvectors of `gram`, ascending by
// eigenvalue. Eigenvectors that vanish once the constant coordinate is
// dropped are discarded, as are directions parallel to one already kept.
// Throws kDegenerateData when nothing remains.
std::vector<std::vector<double>> ProjectionDirections(
    const GramAccumulator& gram, const SynthesisConfig& config);

// Throws kTooFewRows (n < 2), kDimensionMismatch (no columns),
// kDegenerateData.
std::vector<WeightedProjection> DeriveProjections(MatrixView data,
                                                  const SynthesisConfig& config);

double ImportanceFactor(double stddev);

// Bounds for `projection` recomputed over `data`. gamma is left at the
// unnormalized importance factor.
BoundedConstraint SynthesizeBounds(const Projection& projection, MatrixView data,
                                   const SynthesisConfig& config);

BoundedConstraint BoundsFromMoments(std::vector<double> coefficients,
                                    Moments moments,
                                    const SynthesisConfig& config);

// Normalizes the gammas of `conjuncts` to sum to one.
SimpleConstraint NormalizeImportance(std::vector<BoundedConstraint> conjuncts);

SimpleConstraint BuildSimpleConstraint(MatrixView data,
                                       const SynthesisConfig& config);

// Throws kNoNumericColumns, kTooFewRows.
ConformanceProfile BuildProfile(const Dataset& dataset,
                                const SynthesisConfig& config);

// Learns a simple constraint in two passes over a row stream without
// retaining rows: the first pass feeds the Gram accumulator, the second the
// per-projection moments. State is O(numeric_width^2).
class StreamingSimpleLearner {
 public:
  StreamingSimpleLearner(std::size_t numeric_width, SynthesisConfig config);

  void AddGramRow(std::span<const double> row);
  // Ends pass one. Throws kTooFewRows, kDegenerateData.
  void FinishGramPass();
  void AddMomentRow(std::span<const double> row);
  // Ends pass two.
  SimpleConstraint Finish() const;

  const GramAccumulator& gram() const { return gram_; }
  std::size_t projection_count() const { return directions_.size(); }

 private:
  SynthesisConfig config_;
  GramAccumulator gram_;
  std::vector<std::vector<double>> directions_;
  std::vector<RunningMoments> moments_;
  bool gram_done_ = false;
};

}  // namespace ccsynth

#endif  // CCSYNTH_SYNTHESIS_HPP_
