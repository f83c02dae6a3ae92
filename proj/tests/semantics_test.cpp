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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ccsynth/error.hpp"
#include "ccsynth/synthesis.hpp"
#include "test_util.hpp"

namespace ccsynth {
namespace {

BoundedConstraint Bounded(std::vector<double> w, double mean, double stddev,
                          double gamma = 1.0, double c = 4.0) {
  BoundedConstraint b;
  b.projection = {std::move(w), mean, stddev};
  b.lb = mean - c * stddev;
  b.ub = mean + c * stddev;
  b.alpha = 1.0 / stddev;
  b.gamma = gamma;
  return b;
}

// Flight-style tuple: (dt, dur, at) with the "month" attribute stored
// separately.
ConformanceProfile MayProfile() {
  ConformanceProfile p;
  p.schema = {{"dt", ColumnKind::kNumeric, 0},
              {"dur", ColumnKind::kNumeric, 1},
              {"at", ColumnKind::kNumeric, 2},
              {"month", ColumnKind::kCategorical, 3}};
  const double r = 1.0 / std::sqrt(3.0);
  // at - dt - dur, scaled to unit norm.
  p.global.conjuncts = {Bounded({-r, -r, r}, 0.0, 0.5)};
  p.training_means = {600, 100, 700};
  DisjunctiveConstraint d;
  d.attribute = "month";
  // -2 <= at - dt - dur <= 0 on the unscaled projection.
  d.branches["May"].conjuncts = {Bounded({-r, -r, r}, -1.0 * r, 0.25 * r)};
  d.trained_row_counts = {{"May", 100}, {"June", 5}};
  p.disjunctive.push_back(d);
  return p;
}

TEST(ViolationBoundedTest, FarBelowLowerBoundIsNearlyOne) {
  BoundedConstraint phi;
  phi.projection = {{1.0}, 0.0, 3.64};
  phi.lb = -5;
  phi.ub = 5;
  phi.alpha = 1.0 / 3.64;
  const double v = ViolationBounded(phi, std::vector<double>{-1438});
  EXPECT_GE(v, 0.999);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, 1.0 - std::exp(-1433.0 / 3.64), 1e-15);
}

TEST(ViolationBoundedTest, InsideBoundsIsZero) {
  const auto b = Bounded({1.0}, 2.0, 0.5);
  EXPECT_EQ(ViolationBounded(b, std::vector<double>{2.0}), 0.0);
  EXPECT_EQ(ViolationBounded(b, std::vector<double>{b.ub}), 0.0);
  EXPECT_EQ(ViolationBounded(b, std::vector<double>{b.lb}), 0.0);
}

TEST(ViolationBoundedTest, OneSigmaBeyondUpperBound) {
  const auto b = Bounded({1.0}, 2.0, 0.5);
  EXPECT_NEAR(ViolationBounded(b, std::vector<double>{b.ub + 0.5}),
              1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(ViolationBounded(b, std::vector<double>{b.ub + 0.5}), 0.6321, 1e-4);
}

TEST(ViolationBoundedTest, RejectsNonFiniteAndWrongWidth) {
  const auto b = Bounded({1.0}, 0.0, 1.0);
  EXPECT_THROW(ViolationBounded(b, std::vector<double>{NAN}), Error);
  EXPECT_THROW(ViolationBounded(b, std::vector<double>{1.0, 2.0}), Error);
}

// Properties: range, zero inside the zone, monotone in standardized
// deviation, and Lipschitz with constant alpha.
TEST(ViolationBoundedPropertyTest, RangeMonotonicityContinuity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::uniform_real_distribution<double> s(1e-3, 50);
  for (int trial = 0; trial < 20000; ++trial) {
    const auto b1 = Bounded({1.0}, u(rng), s(rng));
    const auto b2 = Bounded({1.0}, u(rng), s(rng));
    const double t = u(rng) * 5;
    const double v1 = ViolationBounded(b1, std::vector<double>{t});
    const double v2 = ViolationBounded(b2, std::vector<double>{t});
    ASSERT_GE(v1, 0.0);
    ASSERT_LT(v1, 1.0);
    if (t >= b1.lb && t <= b1.ub) {
      ASSERT_EQ(v1, 0.0);
    }
    const double z1 = std::abs(t - b1.projection.mean) / b1.projection.stddev;
    const double z2 = std::abs(t - b2.projection.mean) / b2.projection.stddev;
    if (z1 >= z2) {
      ASSERT_GE(v1, v2);
    }
    const double dt = 1e-6 * (1.0 + std::abs(t));
    const double v1b = ViolationBounded(b1, std::vector<double>{t + dt});
    ASSERT_LE(std::abs(v1b - v1), b1.alpha * dt * (1 + 1e-9) + 1e-15);
  }
}

TEST(ViolationSimpleTest, WeightedSum) {
  // Conjunct violations 0.8 and 0.4 under gammas 0.75 and 0.25.
  auto a = Bounded({1.0}, 0.0, 1.0, 0.75);
  auto b = Bounded({1.0}, 0.0, 1.0, 0.25);
  const double t = 10.0;
  a.alpha = -std::log(1.0 - 0.8) / (t - a.ub);
  b.alpha = -std::log(1.0 - 0.4) / (t - b.ub);
  SimpleConstraint s{{a, b}};
  EXPECT_NEAR(ViolationSimple(s, std::vector<double>{t}), 0.7, 1e-12);
}

TEST(ViolationSimpleTest, SatisfiedIsZeroAndSingletonMatchesBounded) {
  const auto b = Bounded({1.0}, 0.0, 1.0);
  SimpleConstraint s{{b}};
  EXPECT_EQ(ViolationSimple(s, std::vector<double>{0.5}), 0.0);
  EXPECT_EQ(ViolationSimple(s, std::vector<double>{9.0}),
            ViolationBounded(b, std::vector<double>{9.0}));
}

TEST(SimpTest, SelectsBranchOrUndefined) {
  const auto p = MayProfile();
  const auto& d = p.disjunctive[0];
  EXPECT_EQ(Simp(d, "May"), &d.branches.at("May"));
  EXPECT_EQ(Simp(d, "August"), nullptr);
  // Seen during training but too small to learn from.
  EXPECT_EQ(Simp(d, "June"), nullptr);
}

TEST(SimpTest, ResolvesAttributeThroughSchema) {
  const auto p = MayProfile();
  const std::vector<double> numeric = {600, 100, 699};
  const std::vector<std::string> cats = {"May"};
  TupleRef t{numeric, cats, false};
  EXPECT_EQ(Simp(p.disjunctive[0], p.schema, t), &p.disjunctive[0].branches.at("May"));
  DisjunctiveConstraint other;
  other.attribute = "carrier";
  try {
    Simp(other, p.schema, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingAttribute);
  }
}

TEST(ViolationProfileTest, MayBranchConformingTupleScoresZero) {
  const auto p = MayProfile();
  const auto binding = SchemaBinding::Bind(p, p.schema);
  const std::vector<double> numeric = {600, 100, 699};
  const std::vector<std::string> cats = {"May"};
  EXPECT_EQ(ViolationProfile(p, binding, TupleRef{numeric, cats, false}), 0.0);
}

TEST(ViolationProfileTest, UnknownValueContributesOnePerDisjunction) {
  const auto p = MayProfile();
  const auto binding = SchemaBinding::Bind(p, p.schema);
  const std::vector<double> numeric = {600, 100, 700};
  const std::vector<std::string> cats = {"August"};
  // Global term 0, one undefined disjunction: (0 + 1) / 2.
  EXPECT_DOUBLE_EQ(ViolationProfile(p, binding, TupleRef{numeric, cats, false}), 0.5);
}

TEST(ViolationProfileTest, IncompleteTupleScoresOne) {
  const auto p = MayProfile();
  const auto binding = SchemaBinding::Bind(p, p.schema);
  const std::vector<double> numeric = {600, 100, 700};
  const std::vector<std::string> cats = {"May"};
  EXPECT_EQ(ViolationProfile(p, binding, TupleRef{numeric, cats, true}), 1.0);
}

TEST(ViolationProfileTest, OvernightTupleViolatesDaytimeProfile) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dt(360, 540), dur(60, 120);
  std::normal_distribution<double> noise(0, 3);
  Schema schema = {{"dt", ColumnKind::kNumeric, 0},
                   {"dur", ColumnKind::kNumeric, 1},
                   {"at", ColumnKind::kNumeric, 2}};
  std::vector<double> rows;
  for (int i = 0; i < 2000; ++i) {
    const double a = dt(rng), b = dur(rng);
    rows.insert(rows.end(), {a, b, a + b + noise(rng)});
  }
  const auto p = BuildProfile(Dataset(schema, rows, {}, 2000), {});
  const auto binding = SchemaBinding::Bind(p, schema);
  const std::vector<double> overnight = {1380, 360, 1380 + 360 - 1440};
  EXPECT_GE(ViolationProfile(p, binding, TupleRef{overnight, {}, false}), 0.9);
  const std::vector<double> day = {450, 90, 541};
  EXPECT_LE(ViolationProfile(p, binding, TupleRef{day, {}, false}), 0.05);
}

TEST(SchemaBindingTest, RejectsMissingOrReorderedColumns) {
  const auto p = MayProfile();
  Schema missing = {{"dt", ColumnKind::kNumeric, 0},
                    {"at", ColumnKind::kNumeric, 1},
                    {"month", ColumnKind::kCategorical, 2}};
  Schema reordered = {{"dur", ColumnKind::kNumeric, 0},
                      {"dt", ColumnKind::kNumeric, 1},
                      {"at", ColumnKind::kNumeric, 2},
                      {"month", ColumnKind::kCategorical, 3}};
  Schema no_month = {{"dt", ColumnKind::kNumeric, 0},
                     {"dur", ColumnKind::kNumeric, 1},
                     {"at", ColumnKind::kNumeric, 2}};
  for (const Schema& s : {missing, reordered, no_month}) {
    try {
      SchemaBinding::Bind(p, s);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
    }
  }
}

Dataset CleanPlane(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0, 1);
  std::vector<double> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 10 * z(rng), y = 10 * z(rng);
    rows.insert(rows.end(), {x, y, x - 2 * y + 0.1 * z(rng)});
  }
  return testing::NumericDataset(rows, 3);
}

TEST(ViolationDatasetTest, SelfViolationIsSmall) {
  const auto d = CleanPlane(2000, 1);
  const auto p = BuildProfile(d, {});
  const auto report = ViolationDataset(p, d);
  EXPECT_LE(report.mean_violation, 0.05);
  EXPECT_EQ(report.per_tuple.size(), 2000u);
  EXPECT_TRUE(report.per_constraint.empty());
}

TEST(ViolationDatasetTest, EmptyDatasetIsAnError) {
  const auto p = BuildProfile(CleanPlane(100, 2), {});
  const auto empty = testing::NumericDataset({}, 3);
  try {
    ViolationDataset(p, empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(ViolationDatasetTest, MixedSetMeanIsMidpoint) {
  const auto train = CleanPlane(2000, 3);
  const auto p = BuildProfile(train, {});
  const auto good = CleanPlane(500, 4);
  std::vector<double> bad_rows, mixed_rows;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto r = good.numeric_row(i);
    bad_rows.insert(bad_rows.end(), {r[0], r[1], r[2] + 40});
  }
  for (std::size_t i = 0; i < 500; ++i) {
    const auto r = good.numeric_row(i);
    mixed_rows.insert(mixed_rows.end(), r.begin(), r.end());
    mixed_rows.insert(mixed_rows.end(), bad_rows.begin() + 3 * i,
                      bad_rows.begin() + 3 * i + 3);
  }
  const double g = ViolationDataset(p, good).mean_violation;
  const double b = ViolationDataset(p, testing::NumericDataset(bad_rows, 3)).mean_violation;
  const double m =
      ViolationDataset(p, testing::NumericDataset(mixed_rows, 3)).mean_violation;
  EXPECT_GT(b, 0.5);
  EXPECT_NEAR(m, (g + b) / 2, 1e-9);
}

TEST(ViolationDatasetTest, PerConstraintAndThreadsAreStable) {
  const auto train = CleanPlane(1000, 5);
  const auto p = BuildProfile(train, {});
  std::vector<double> rows;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z(0, 20);
  for (int i = 0; i < 997; ++i) rows.insert(rows.end(), {z(rng), z(rng), z(rng)});
  const auto serve = testing::NumericDataset(rows, 3);
  EvaluationOptions one{true, 1};
  const auto base = ViolationDataset(p, serve, one);
  EXPECT_EQ(base.constraint_count, p.global.conjuncts.size());
  EXPECT_EQ(base.per_constraint.size(), 997 * p.global.conjuncts.size());
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto r = ViolationDataset(p, serve, EvaluationOptions{true, threads});
    EXPECT_EQ(r.per_tuple, base.per_tuple);
    EXPECT_EQ(r.per_constraint, base.per_constraint);
    EXPECT_EQ(r.mean_violation, base.mean_violation);
  }
  for (std::size_t i = 0; i < 997; ++i) {
    const auto expected = ViolationSimple(p.global, serve.numeric_row(i));
    EXPECT_DOUBLE_EQ(base.per_tuple[i], expected);
  }
}

TEST(ViolationDatasetTest, ViolationsStayInUnitInterval) {
  const auto p = BuildProfile(CleanPlane(500, 7), {});
  std::vector<double> rows;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e9, 1e9);
  for (int i = 0; i < 2000; ++i) rows.insert(rows.end(), {u(rng), u(rng), u(rng)});
  const auto r = ViolationDataset(p, testing::NumericDataset(rows, 3));
  for (double v : r.per_tuple) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace ccsynth
