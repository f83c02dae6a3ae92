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

#include "ccsynth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccsynth/error.hpp"

namespace ccsynth {

std::vector<double> NormalizeSeries(std::span<const double> raw) {
  std::vector<double> out(raw.size(), 0.0);
  if (raw.empty()) return out;
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - *lo) / range;
  return out;
}

DriftSeries QuantifyDrift(const ConformanceProfile& profile,
                          const Dataset& stream, std::size_t window_size,
                          unsigned threads) {
  if (window_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "window size must be at least 1");
  }
  if (stream.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "empty stream");
  }
  EvaluationOptions options;
  options.threads = threads;
  const ViolationReport report = ViolationDataset(profile, stream, options);

  DriftSeries series;
  series.window_size = window_size;
  const std::size_t n = stream.rows();
  for (std::size_t begin = 0; begin < n; begin += window_size) {
    const std::size_t end = std::min(n, begin + window_size);
    const std::size_t size = end - begin;
    if (size < window_size && 2 * size < window_size) break;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += report.per_tuple[i];
    series.raw.push_back(sum / static_cast<double>(size));
  }
  if (series.raw.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "stream of " + std::to_string(n) +
                    " rows fills less than half a window of " +
                    std::to_string(window_size));
  }
  series.normalized = NormalizeSeries(series.raw);
  return series;
}

namespace {

void CheckUnitThreshold(double value, const char* what) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw Error(ErrorCode::kInvalidThreshold,
                std::string(what) + " must lie in [0, 1), got " +
                    std::to_string(value));
  }
}

}  // namespace

std::vector<bool> FlagUnsafe(const ConformanceProfile& profile,
                             const Dataset& dataset, double threshold) {
  CheckUnitThreshold(threshold, "threshold");
  const ViolationReport report = ViolationDataset(profile, dataset);
  std::vector<bool> flags(report.per_tuple.size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    flags[i] = report.per_tuple[i] > threshold;
  }
  return flags;
}

TupleResponsibility Responsibility(const ConformanceProfile& profile,
                                   const SchemaBinding& binding,
                                   std::span<const double> training_means,
                                   const TupleRef& tuple, double tau) {
  CheckUnitThreshold(tau, "tau");
  const std::size_t m = binding.numeric_width();
  if (training_means.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "training means do not match the numeric column count");
  }
  TupleResponsibility result;
  result.values.assign(m, 0.0);

  auto violation = [&](std::span<const double> numeric) {
    TupleRef t = tuple;
    t.numeric = numeric;
    return ViolationProfile(profile, binding, t);
  };
  if (!tuple.incomplete && violation(tuple.numeric) <= tau) return result;

  std::vector<double> all_means(training_means.begin(), training_means.end());
  if (tuple.incomplete || violation(all_means) > tau) {
    result.non_convergent = true;
    result.values.assign(m, 1.0 / static_cast<double>(m));
    return result;
  }

  std::vector<double> work(m);
  std::vector<bool> fixed(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(tuple.numeric.begin(), tuple.numeric.end(), work.begin());
    std::fill(fixed.begin(), fixed.end(), false);
    work[i] = training_means[i];
    fixed[i] = true;
    double current = violation(work);
    std::size_t extra = 0;
    // Greedy repair: reset whichever attribute lowers the violation most,
    // lowest index on ties. Terminates because all-means conforms.
    while (current > tau) {
      std::size_t best = m;
      double best_violation = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (fixed[j]) continue;
        const double saved = work[j];
        work[j] = training_means[j];
        const double v = violation(work);
        work[j] = saved;
        if (best == m || v < best_violation) {
          best = j;
          best_violation = v;
        }
      }
      work[best] = training_means[best];
      fixed[best] = true;
      current = best_violation;
      ++extra;
    }
    result.values[i] = 1.0 / static_cast<double>(extra + 1);
  }
  return result;
}

ResponsibilityReport AggregateResponsibility(
    const ConformanceProfile& profile, std::span<const double> training_means,
    const Dataset& dataset, double tau, bool keep_per_tuple) {
  CheckUnitThreshold(tau, "tau");
  const SchemaBinding binding = SchemaBinding::Bind(profile, dataset.schema());
  if (dataset.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot explain an empty dataset");
  }
  const std::size_t m = binding.numeric_width();
  ResponsibilityReport report;
  report.attributes = profile.numeric_names();
  report.per_attribute.assign(m, 0.0);
  report.tau = tau;
  if (keep_per_tuple) report.per_tuple.reserve(dataset.rows() * m);
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    const TupleResponsibility r = Responsibility(
        profile, binding, training_means, dataset.tuple(i), tau);
    if (r.non_convergent) ++report.non_convergent_tuples;
    for (std::size_t j = 0; j < m; ++j) report.per_attribute[j] += r.values[j];
    if (keep_per_tuple) {
      report.per_tuple.insert(report.per_tuple.end(), r.values.begin(),
                              r.values.end());
    }
  }
  for (double& v : report.per_attribute) v /= static_cast<double>(dataset.rows());
  return report;
}

}  // namespace ccsynth
