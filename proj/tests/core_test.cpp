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

#include <cmath>
#include <functional>
#include <limits>

#include <gtest/gtest.h>

#include "ccsynth/error.hpp"
#include "test_util.hpp"

namespace ccsynth {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return ErrorCode::kInvalidArgument;
}

BoundedConstraint Conjunct(std::vector<double> w, double mean, double stddev,
                           double gamma, double c = 4.0) {
  BoundedConstraint b;
  b.projection = {std::move(w), mean, stddev};
  b.lb = mean - c * stddev;
  b.ub = mean + c * stddev;
  b.alpha = 1.0 / stddev;
  b.gamma = gamma;
  return b;
}

ConformanceProfile TwoColumnProfile() {
  ConformanceProfile p;
  p.schema = {{"x", ColumnKind::kNumeric, 0},
              {"y", ColumnKind::kNumeric, 1},
              {"month", ColumnKind::kCategorical, 2}};
  const double r = 1.0 / std::sqrt(2.0);
  p.global.conjuncts = {Conjunct({r, r}, 1.0, 0.5, 0.6),
                        Conjunct({r, -r}, 0.0, 2.0, 0.4)};
  p.training_means = {0.5, 0.5};
  return p;
}

TEST(ColumnKindTest, NamesRoundTrip) {
  for (ColumnKind k :
       {ColumnKind::kNumeric, ColumnKind::kCategorical, ColumnKind::kIgnored}) {
    EXPECT_EQ(ParseColumnKind(ColumnKindName(k)), k);
  }
  EXPECT_FALSE(ParseColumnKind("text").has_value());
}

TEST(SchemaTest, RejectsDuplicateNames) {
  Schema s = {{"a", ColumnKind::kNumeric, 0}, {"a", ColumnKind::kNumeric, 1}};
  EXPECT_EQ(CodeOf([&] { ValidateSchema(s); }), ErrorCode::kInvariantViolation);
}

TEST(SchemaTest, RejectsNonIncreasingIndices) {
  Schema s = {{"a", ColumnKind::kNumeric, 1}, {"b", ColumnKind::kNumeric, 1}};
  EXPECT_EQ(CodeOf([&] { ValidateSchema(s); }), ErrorCode::kInvariantViolation);
}

TEST(SchemaTest, ColumnNamesFiltersByKind) {
  Schema s = {{"a", ColumnKind::kNumeric, 0},
              {"b", ColumnKind::kCategorical, 1},
              {"c", ColumnKind::kIgnored, 2},
              {"d", ColumnKind::kNumeric, 3}};
  EXPECT_EQ(ColumnNames(s, ColumnKind::kNumeric),
            (std::vector<std::string>{"a", "d"}));
  EXPECT_EQ(ColumnNames(s, ColumnKind::kCategorical),
            (std::vector<std::string>{"b"}));
}

TEST(DatasetTest, SplitsRowsByKind) {
  Schema s = {{"x", ColumnKind::kNumeric, 0},
              {"m", ColumnKind::kCategorical, 1},
              {"y", ColumnKind::kNumeric, 2}};
  Dataset d(s, {1, 2, 3, 4}, {"jan", "feb"}, 2);
  EXPECT_EQ(d.rows(), 2u);
  EXPECT_EQ(d.numeric_width(), 2u);
  EXPECT_EQ(d.categorical_width(), 1u);
  EXPECT_EQ(d.numeric_row(1)[0], 3.0);
  EXPECT_EQ(d.categorical_row(1)[0], "feb");
  EXPECT_EQ(d.numeric_names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(d.categorical_position("m"), 0u);
  EXPECT_FALSE(d.categorical_position("x").has_value());
  EXPECT_FALSE(d.tuple(0).incomplete);
  EXPECT_EQ(d.source_row(1), 1u);
}

TEST(DatasetTest, TracksIncompleteRowsAndSourceRows) {
  Schema s = {{"x", ColumnKind::kNumeric, 0}};
  Dataset d(s, {1, 0, 3}, {}, 3, {0, 1, 0}, {0, 2, 5}, 4);
  EXPECT_EQ(d.incomplete_rows(), 1u);
  EXPECT_TRUE(d.tuple(1).incomplete);
  EXPECT_EQ(d.source_row(2), 5u);
  EXPECT_EQ(d.skipped_rows(), 4u);
}

TEST(DatasetTest, RejectsShapeMismatch) {
  Schema s = {{"x", ColumnKind::kNumeric, 0}, {"y", ColumnKind::kNumeric, 1}};
  EXPECT_EQ(CodeOf([&] { Dataset(s, {1, 2, 3}, {}, 2); }),
            ErrorCode::kInvariantViolation);
}

TEST(DatasetTest, RejectsNonFiniteCells) {
  Schema s = {{"x", ColumnKind::kNumeric, 0}};
  EXPECT_EQ(CodeOf([&] {
              Dataset(s, {1, std::numeric_limits<double>::quiet_NaN()}, {}, 2);
            }),
            ErrorCode::kNonFinite);
}

TEST(ProjectionTest, AppliesDotProduct) {
  Projection p{{0.6, 0.8}, 0.0, 1.0};
  const std::vector<double> t = {10.0, 5.0};
  EXPECT_DOUBLE_EQ(p.Apply(t), 10.0);
  const std::vector<double> short_row = {1.0};
  EXPECT_EQ(CodeOf([&] { p.Apply(short_row); }), ErrorCode::kDimensionMismatch);
}

TEST(ValidateProfileTest, AcceptsWellFormedProfile) {
  EXPECT_NO_THROW(ValidateProfile(TwoColumnProfile()));
}

TEST(ValidateProfileTest, RejectsGammaSumAwayFromOne) {
  auto p = TwoColumnProfile();
  p.global.conjuncts[1].gamma = 0.1;
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ValidateProfileTest, RejectsNonUnitCoefficients) {
  auto p = TwoColumnProfile();
  p.global.conjuncts[0].projection.coefficients = {1.0, 1.0};
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ValidateProfileTest, RejectsBoundsInconsistentWithCFactor) {
  auto p = TwoColumnProfile();
  p.global.conjuncts[0].ub += 1.0;
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ValidateProfileTest, RejectsNonPositiveAlpha) {
  auto p = TwoColumnProfile();
  p.global.conjuncts[0].alpha = 0.0;
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ValidateProfileTest, RejectsWrongVersion) {
  auto p = TwoColumnProfile();
  p.format_version = 2;
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kVersionMismatch);
}

TEST(ValidateProfileTest, RejectsDisjunctionOnNumericColumn) {
  auto p = TwoColumnProfile();
  DisjunctiveConstraint d;
  d.attribute = "x";
  p.disjunctive.push_back(d);
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ValidateProfileTest, RejectsBranchWithoutRowCount) {
  auto p = TwoColumnProfile();
  DisjunctiveConstraint d;
  d.attribute = "month";
  d.branches["may"] = p.global;
  p.disjunctive.push_back(d);
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
  p.disjunctive[0].trained_row_counts["may"] = 30;
  EXPECT_NO_THROW(ValidateProfile(p));
}

TEST(ValidateProfileTest, RejectsTrainingMeansOfWrongLength) {
  auto p = TwoColumnProfile();
  p.training_means = {1.0};
  EXPECT_EQ(CodeOf([&] { ValidateProfile(p); }), ErrorCode::kInvariantViolation);
}

TEST(ErrorTest, CarriesCodeAndName) {
  Error e(ErrorCode::kSchemaMismatch, "boom");
  EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
  EXPECT_STREQ(e.what(), "boom");
  EXPECT_EQ(ErrorCodeName(ErrorCode::kSchemaMismatch), "SchemaMismatch");
}

}  // namespace
}  // namespace ccsynth
