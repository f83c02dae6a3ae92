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

// Dense linear algebra and descriptive statistics used by constraint
// synthesis: a mergeable second-moment accumulator over constant-augmented
// rows, a Jacobi eigensolver for small symmetric matrices, and population
// moments.

#ifndef CCSYNTH_NUMERIC_HPP_
#define CCSYNTH_NUMERIC_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ccsynth/core.hpp"

namespace ccsynth {

// Small dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const double> data() const { return data_; }

  std::vector<double> Column(std::size_t j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double FrobeniusNorm(const Matrix& m);

// Running sum of t t^T over augmented rows t = [1; numeric row]. Holds
// O(dim^2) state regardless of how many rows were added.
class GramAccumulator {
 public:
  GramAccumulator() = default;
  explicit GramAccumulator(std::size_t numeric_width);

  // Throws kDimensionMismatch or kNonFinite.
  void Update(std::span<const double> numeric_row);
  // Throws kDimensionMismatch.
  void Merge(const GramAccumulator& other);

  std::size_t dim() const { return dim_; }
  std::size_t numeric_width() const { return dim_ == 0 ? 0 : dim_ - 1; }
  std::size_t count() const { return count_; }

  // Full symmetric dim x dim matrix.
  Matrix sum_outer() const;

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> upper_;  // row-major dim x dim, upper triangle used
};

GramAccumulator GramUpdate(GramAccumulator acc,
                           std::span<const double> numeric_row);
GramAccumulator GramMerge(const GramAccumulator& a, const GramAccumulator& b);

// Accumulates `data` over `partitions` contiguous row blocks, one thread per
// block, and merges the partial results in block order.
GramAccumulator AccumulateGram(MatrixView data, unsigned partitions = 1);

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi rotations. Each eigenvector is unit norm with its first
// component of magnitude above 1e-12 made positive. Throws kNotSymmetric or
// kNonFinite.
EigenResult EigenSymmetric(const Matrix& a);

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;  // population form, divides by n
};

// Two-pass population mean and standard deviation. Throws kEmptyInput.
Moments PopulationStats(std::span<const double> values);

// Welford accumulator for population moments; mergeable.
class RunningMoments {
 public:
  void Add(double x);
  void Merge(const RunningMoments& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double stddev() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace ccsynth

#endif  // CCSYNTH_NUMERIC_HPP_
