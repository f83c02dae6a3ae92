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

#include "ccsynth/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ccsynth/error.hpp"

namespace ccsynth {

std::size_t SynthesisConfig::EffectiveMinPartitionRows(
    std::size_t numeric_width) const {
  if (min_partition_rows > 0) return min_partition_rows;
  return std::max<std::size_t>(20, 2 * (numeric_width + 1));
}

void ValidateConfig(const SynthesisConfig& config) {
  if (!(config.c_factor > 0.0) || !std::isfinite(config.c_factor)) {
    throw Error(ErrorCode::kInvalidArgument, "c_factor must be positive");
  }
  if (config.max_distinct_for_partition < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_distinct_for_partition must be at least 2");
  }
  if (!(config.epsilon_sigma > 0.0) || !(config.epsilon_norm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilons must be positive");
  }
}

std::vector<std::vector<double>> ProjectionDirections(
    const GramAccumulator& gram, const SynthesisConfig& config) {
  const EigenResult eigen = EigenSymmetric(gram.sum_outer());
  const std::size_t dim = gram.dim();
  std::vector<std::vector<double>> kept;
  for (std::size_t k = 0; k < dim; ++k) {
    // Drop the constant coordinate.
    std::vector<double> w(dim - 1);
    double norm2 = 0.0;
    for (std::size_t r = 1; r < dim; ++r) {
      w[r - 1] = eigen.eigenvectors(r, k);
      norm2 += w[r - 1] * w[r - 1];
    }
    const double norm = std::sqrt(norm2);
    if (norm < config.epsilon_norm) continue;
    for (double& x : w) x /= norm;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const auto& u) {
      double dot = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) dot += u[j] * w[j];
      return std::abs(dot) >= 1.0 - 1e-9;
    });
    if (!duplicate) kept.push_back(std::move(w));
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kDegenerateData,
                "every eigenvector vanished after dropping the constant "
                "coordinate");
  }
  return kept;
}

double ImportanceFactor(double stddev) { return 1.0 / std::log(2.0 + stddev); }

namespace {

std::vector<double> ProjectAll(std::span<const double> coefficients,
                               MatrixView data) {
  std::vector<double> values(data.rows);
  for (std::size_t i = 0; i < data.rows; ++i) {
    const auto row = data.row(i);
    double v = 0.0;
    for (std::size_t j = 0; j < data.cols; ++j) v += coefficients[j] * row[j];
    values[i] = v;
  }
  return values;
}

void CheckTrainingShape(MatrixView data) {
  if (data.cols == 0) {
    throw Error(ErrorCode::kNoNumericColumns, "no numeric columns to learn from");
  }
  if (data.rows < 2) {
    throw Error(ErrorCode::kTooFewRows,
                "too few rows: need at least 2, got " + std::to_string(data.rows));
  }
}

}  // namespace

std::vector<WeightedProjection> DeriveProjections(MatrixView data,
                                                  const SynthesisConfig& config) {
  CheckTrainingShape(data);
  const GramAccumulator gram = AccumulateGram(data, config.threads);
  std::vector<WeightedProjection> out;
  for (auto& w : ProjectionDirections(gram, config)) {
    const Moments moments = PopulationStats(ProjectAll(w, data));
    WeightedProjection wp;
    wp.projection.coefficients = std::move(w);
    wp.projection.mean = moments.mean;
    wp.projection.stddev = moments.stddev;
    wp.gamma = ImportanceFactor(moments.stddev);
    out.push_back(std::move(wp));
  }
  return out;
}

BoundedConstraint BoundsFromMoments(std::vector<double> coefficients,
                                    Moments moments,
                                    const SynthesisConfig& config) {
  BoundedConstraint c;
  c.projection.coefficients = std::move(coefficients);
  c.projection.mean = moments.mean;
  c.projection.stddev = moments.stddev;
  c.lb = moments.mean - config.c_factor * moments.stddev;
  c.ub = moments.mean + config.c_factor * moments.stddev;
  c.alpha = 1.0 / std::max(moments.stddev, config.epsilon_sigma);
  c.gamma = ImportanceFactor(moments.stddev);
  return c;
}

BoundedConstraint SynthesizeBounds(const Projection& projection, MatrixView data,
                                   const SynthesisConfig& config) {
  if (projection.coefficients.size() != data.cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection width does not match data width");
  }
  return BoundsFromMoments(projection.coefficients,
                           PopulationStats(ProjectAll(projection.coefficients, data)),
                           config);
}

SimpleConstraint NormalizeImportance(std::vector<BoundedConstraint> conjuncts) {
  double z = 0.0;
  for (const auto& c : conjuncts) z += c.gamma;
  for (auto& c : conjuncts) c.gamma /= z;
  return SimpleConstraint{std::move(conjuncts)};
}

SimpleConstraint BuildSimpleConstraint(MatrixView data,
                                       const SynthesisConfig& config) {
  std::vector<BoundedConstraint> conjuncts;
  for (auto& wp : DeriveProjections(data, config)) {
    conjuncts.push_back(BoundsFromMoments(
        std::move(wp.projection.coefficients),
        Moments{wp.projection.mean, wp.projection.stddev}, config));
  }
  return NormalizeImportance(std::move(conjuncts));
}

ConformanceProfile BuildProfile(const Dataset& dataset,
                                const SynthesisConfig& config) {
  ValidateConfig(config);
  const std::size_t width = dataset.numeric_width();
  if (width == 0) {
    throw Error(ErrorCode::kNoNumericColumns, "dataset has no numeric columns");
  }

  // Rows retained with unparseable numerics never contribute to training.
  std::vector<std::size_t> rows;
  rows.reserve(dataset.rows());
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    if (!dataset.incomplete(i)) rows.push_back(i);
  }
  if (rows.size() < 2) {
    throw Error(ErrorCode::kTooFewRows,
                "too few rows: need at least 2 complete rows, got " +
                    std::to_string(rows.size()));
  }
  auto gather = [&](const std::vector<std::size_t>& subset) {
    std::vector<double> out;
    out.reserve(subset.size() * width);
    for (std::size_t i : subset) {
      const auto row = dataset.numeric_row(i);
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  };

  ConformanceProfile profile;
  profile.schema = dataset.schema();
  profile.c_factor = config.c_factor;

  const std::vector<double> training = gather(rows);
  const MatrixView all{training, rows.size(), width};
  profile.global = BuildSimpleConstraint(all, config);
  profile.training_means.assign(width, 0.0);
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<double> column(all.rows);
    for (std::size_t i = 0; i < all.rows; ++i) column[i] = all.row(i)[j];
    profile.training_means[j] = PopulationStats(column).mean;
  }

  const std::size_t min_rows = config.EffectiveMinPartitionRows(width);
  const auto categorical = dataset.categorical_names();
  for (std::size_t c = 0; c < categorical.size(); ++c) {
    std::map<std::string, std::vector<std::size_t>> partitions;
    for (std::size_t i : rows) {
      partitions[dataset.categorical_row(i)[c]].push_back(i);
    }
    if (partitions.size() < 2 ||
        partitions.size() > config.max_distinct_for_partition) {
      continue;
    }
    DisjunctiveConstraint d;
    d.attribute = categorical[c];
    for (const auto& [value, members] : partitions) {
      d.trained_row_counts[value] = members.size();
      if (members.size() < min_rows) continue;
      const std::vector<double> part = gather(members);
      try {
        d.branches[value] =
            BuildSimpleConstraint(MatrixView{part, members.size(), width}, config);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateData) throw;
      }
    }
    if (!d.branches.empty()) profile.disjunctive.push_back(std::move(d));
  }
  return profile;
}

StreamingSimpleLearner::StreamingSimpleLearner(std::size_t numeric_width,
                                               SynthesisConfig config)
    : config_(config), gram_(numeric_width) {
  ValidateConfig(config_);
  if (numeric_width == 0) {
    throw Error(ErrorCode::kNoNumericColumns, "no numeric columns to learn from");
  }
}

void StreamingSimpleLearner::AddGramRow(std::span<const double> row) {
  if (gram_done_) {
    throw Error(ErrorCode::kInvalidArgument, "Gram pass already finished");
  }
  gram_.Update(row);
}

void StreamingSimpleLearner::FinishGramPass() {
  if (gram_.count() < 2) {
    throw Error(ErrorCode::kTooFewRows,
                "too few rows: need at least 2, got " +
                    std::to_string(gram_.count()));
  }
  directions_ = ProjectionDirections(gram_, config_);
  moments_.assign(directions_.size(), RunningMoments{});
  gram_done_ = true;
}

void StreamingSimpleLearner::AddMomentRow(std::span<const double> row) {
  if (!gram_done_) {
    throw Error(ErrorCode::kInvalidArgument, "Gram pass not finished");
  }
  if (row.size() != gram_.numeric_width()) {
    throw Error(ErrorCode::kDimensionMismatch, "row width mismatch");
  }
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    const auto& w = directions_[k];
    double v = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) v += w[j] * row[j];
    moments_[k].Add(v);
  }
}

SimpleConstraint StreamingSimpleLearner::Finish() const {
  if (!gram_done_ || moments_.empty() || moments_.front().count() != gram_.count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "moment pass must revisit every row of the Gram pass");
  }
  std::vector<BoundedConstraint> conjuncts;
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    conjuncts.push_back(BoundsFromMoments(
        directions_[k], Moments{moments_[k].mean(), moments_[k].stddev()},
        config_));
  }
  return NormalizeImportance(std::move(conjuncts));
}

}  // namespace ccsynth
