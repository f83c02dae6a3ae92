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

#include "ccsynth/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "ccsynth/error.hpp"

namespace ccsynth {

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::Column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

double FrobeniusNorm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

GramAccumulator::GramAccumulator(std::size_t numeric_width)
    : dim_(numeric_width + 1), upper_(dim_ * dim_, 0.0) {}

void GramAccumulator::Update(std::span<const double> numeric_row) {
  if (numeric_row.size() + 1 != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row width " + std::to_string(numeric_row.size()) +
                    " does not match accumulator width " +
                    std::to_string(numeric_width()));
  }
  for (double v : numeric_row) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "non-finite value in Gram update");
    }
  }
  // Row 0 is the constant coordinate.
  upper_[0] += 1.0;
  for (std::size_t j = 1; j < dim_; ++j) upper_[j] += numeric_row[j - 1];
  for (std::size_t i = 1; i < dim_; ++i) {
    const double xi = numeric_row[i - 1];
    double* row = &upper_[i * dim_];
    for (std::size_t j = i; j < dim_; ++j) row[j] += xi * numeric_row[j - 1];
  }
  ++count_;
}

void GramAccumulator::Merge(const GramAccumulator& other) {
  if (other.dim_ != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot merge Gram accumulators of different width");
  }
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] += other.upper_[k];
  count_ += other.count_;
}

Matrix GramAccumulator::sum_outer() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      m(i, j) = upper_[i * dim_ + j];
      m(j, i) = upper_[i * dim_ + j];
    }
  }
  return m;
}

GramAccumulator GramUpdate(GramAccumulator acc,
                           std::span<const double> numeric_row) {
  acc.Update(numeric_row);
  return acc;
}

GramAccumulator GramMerge(const GramAccumulator& a, const GramAccumulator& b) {
  GramAccumulator out = a;
  out.Merge(b);
  return out;
}

GramAccumulator AccumulateGram(MatrixView data, unsigned partitions) {
  partitions = std::max(1u, partitions);
  std::vector<GramAccumulator> parts(partitions, GramAccumulator(data.cols));
  const std::size_t block = (data.rows + partitions - 1) / partitions;
  auto work = [&](unsigned p) {
    const std::size_t begin = std::min(data.rows, p * block);
    const std::size_t end = std::min(data.rows, begin + block);
    for (std::size_t i = begin; i < end; ++i) parts[p].Update(data.row(i));
  };
  if (partitions == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(partitions);
    for (unsigned p = 0; p < partitions; ++p) threads.emplace_back(work, p);
    for (auto& t : threads) t.join();
  }
  GramAccumulator total(data.cols);
  for (const auto& part : parts) total.Merge(part);
  return total;
}

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr int kMaxSweeps = 100;

// Applies the rotation zeroing a(p, q) to a and accumulates it into v.
void Rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(r, p) = arp - s * (arq + tau * arp);
    a(p, r) = a(r, p);
    a(r, q) = arq + s * (arp - tau * arq);
    a(q, r) = a(r, q);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = vrp - s * (vrq + tau * vrp);
    v(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

}  // namespace

EigenResult EigenSymmetric(const Matrix& input) {
  const std::size_t n = input.rows();
  if (n == 0 || input.cols() != n) {
    throw Error(ErrorCode::kNotSymmetric, "matrix must be square and non-empty");
  }
  for (double x : input.data()) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFinite, "matrix has a non-finite entry");
    }
  }
  const double norm = FrobeniusNorm(input);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > kSymmetryTolerance * norm) {
        throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
      }
      a(i, j) = 0.5 * (input(i, j) + input(j, i));
    }
  }
  Matrix v = Matrix::Identity(n);

  // Sweep until every off-diagonal entry is negligible against both diagonal
  // entries it couples, which implies max |a_pq| <= 1e-12 * ||A||_F.
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double g = 100.0 * std::abs(apq);
        if (std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        Rotate(a, v, p, q);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x) < a(y, y);
  });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    result.eigenvalues[k] = a(src, src);
    double norm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm2 += v(r, src) * v(r, src);
    const double inv = 1.0 / std::sqrt(norm2);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src) * inv) > 1e-12) {
        sign = v(r, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      result.eigenvectors(r, k) = sign * inv * v(r, src);
    }
  }
  return result;
}

Moments PopulationStats(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyInput, "statistics of an empty sequence");
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double x : values) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return Moments{mean, std::sqrt(ss / n)};
}

void RunningMoments::Add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::Merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double RunningMoments::stddev() const {
  if (count_ == 0) return 0.0;
  return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_)));
}

}  // namespace ccsynth
