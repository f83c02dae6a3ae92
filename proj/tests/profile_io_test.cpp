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

#include "ccsynth/profile_io.hpp"

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "ccsynth/error.hpp"
#include "test_util.hpp"

namespace ccsynth {
namespace {

BoundedConstraint MakeConjunct(std::vector<double> w, double mean, double stddev,
                               double gamma, double c = 4.0) {
  BoundedConstraint b;
  b.projection = {std::move(w), mean, stddev};
  b.lb = mean - c * stddev;
  b.ub = mean + c * stddev;
  b.alpha = stddev > 0 ? 1.0 / stddev : 1e9;
  b.gamma = gamma;
  return b;
}

ConformanceProfile SingleColumnProfile() {
  ConformanceProfile p;
  p.schema = {{"X", ColumnKind::kNumeric, 0}};
  p.global.conjuncts = {MakeConjunct({1.0}, 2.0, 0.8, 1.0)};
  p.training_means = {2.0};
  return p;
}

ConformanceProfile MonthProfile() {
  ConformanceProfile p;
  p.schema = {{"a", ColumnKind::kNumeric, 0},
              {"month", ColumnKind::kCategorical, 1},
              {"b", ColumnKind::kNumeric, 2}};
  const double r = 1.0 / std::sqrt(2.0);
  p.global.conjuncts = {MakeConjunct({r, -r}, 0.0, 1.5, 0.7),
                        MakeConjunct({r, r}, 10.0, 30.0, 0.3)};
  p.training_means = {5.0, 5.0};
  DisjunctiveConstraint d;
  d.attribute = "month";
  SimpleConstraint may;
  may.conjuncts = {MakeConjunct({r, -r}, -1.0, 0.25, 1.0)};
  SimpleConstraint jan;
  jan.conjuncts = {MakeConjunct({r, -r}, 1.0, 0.5, 1.0)};
  // Inserted out of key order on purpose.
  d.branches["may"] = may;
  d.branches["jan"] = jan;
  d.trained_row_counts = {{"may", 40}, {"jan", 35}, {"feb", 3}};
  p.disjunctive.push_back(d);
  return p;
}

ErrorCode DeserializeCode(const std::string& text) {
  try {
    DeserializeProfile(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return ErrorCode::kInvalidArgument;
}

TEST(ProfileIoTest, SingleConjunctRendersFieldsAndRoundTrips) {
  const auto p = SingleColumnProfile();
  const std::string text = SerializeProfile(p);
  EXPECT_NE(text.find("\"coefficients\": [1.0]"), std::string::npos) << text;
  EXPECT_NE(text.find("\"lb\": -1.2"), std::string::npos) << text;
  EXPECT_NE(text.find("\"ub\": 5.2"), std::string::npos) << text;
  EXPECT_NE(text.find("\"mean\": 2.0"), std::string::npos) << text;
  EXPECT_NE(text.find("\"stddev\": 0.8"), std::string::npos) << text;
  EXPECT_NE(text.find("\"gamma\": 1.0"), std::string::npos) << text;
  EXPECT_EQ(DeserializeProfile(text), p);
}

TEST(ProfileIoTest, SerializeIsIdempotent) {
  const std::string once = SerializeProfile(MonthProfile());
  const std::string twice = SerializeProfile(DeserializeProfile(once));
  EXPECT_EQ(once, twice);
}

TEST(ProfileIoTest, BranchesAreListedInSortedKeyOrder) {
  const std::string text = SerializeProfile(MonthProfile());
  const auto jan = text.find("\"jan\"");
  const auto may = text.find("\"may\"");
  const auto feb = text.find("\"feb\"");
  ASSERT_NE(jan, std::string::npos);
  ASSERT_NE(may, std::string::npos);
  ASSERT_NE(feb, std::string::npos);
  EXPECT_LT(feb, jan);
  EXPECT_LT(jan, may);
  EXPECT_EQ(text, SerializeProfile(MonthProfile()));
}

TEST(ProfileIoTest, RoundTripPreservesDisjunctions) {
  const auto p = MonthProfile();
  EXPECT_EQ(DeserializeProfile(SerializeProfile(p)), p);
}

TEST(ProfileIoTest, TruncatedInputIsMalformed) {
  const std::string text = SerializeProfile(MonthProfile());
  EXPECT_EQ(DeserializeCode(text.substr(0, text.size() / 2)),
            ErrorCode::kMalformedProfile);
  EXPECT_EQ(DeserializeCode(""), ErrorCode::kMalformedProfile);
}

TEST(ProfileIoTest, MissingFieldIsMalformed) {
  std::string text = SerializeProfile(SingleColumnProfile());
  const auto pos = text.find("\"alpha\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "\"alphx\"");
  EXPECT_EQ(DeserializeCode(text), ErrorCode::kMalformedProfile);
}

TEST(ProfileIoTest, GammaSumOfHalfIsInvariantViolation) {
  auto p = SingleColumnProfile();
  std::string text = SerializeProfile(p);
  const auto pos = text.find("\"gamma\": 1.0");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 12, "\"gamma\": 0.5");
  EXPECT_EQ(DeserializeCode(text), ErrorCode::kInvariantViolation);
}

TEST(ProfileIoTest, UnknownVersionIsRejected) {
  std::string text = SerializeProfile(SingleColumnProfile());
  const auto pos = text.find("\"format_version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 19, "\"format_version\": 7");
  EXPECT_EQ(DeserializeCode(text), ErrorCode::kVersionMismatch);
}

TEST(ProfileIoTest, NegativeZeroSurvives) {
  auto p = SingleColumnProfile();
  p.training_means = {-0.0};
  const auto back = DeserializeProfile(SerializeProfile(p));
  EXPECT_TRUE(std::signbit(back.training_means[0]));
}

TEST(ProfileIoTest, SaveAndLoadFile) {
  testing::TempDir dir;
  const auto path = dir.File("p.ccp");
  SaveProfile(MonthProfile(), path);
  EXPECT_EQ(LoadProfile(path), MonthProfile());
  try {
    LoadProfile(dir.File("absent.ccp"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFileNotFound);
  }
}

// Property: every valid profile with arbitrary reals survives a round trip
// bit for bit.
TEST(ProfileIoPropertyTest, RandomProfilesRoundTripExactly) {
  std::mt19937_64 rng(20260115);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::uniform_real_distribution<double> pos(1e-12, 1e3);
  std::uniform_int_distribution<int> width_dist(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = width_dist(rng);
    ConformanceProfile p;
    p.c_factor = pos(rng);
    for (int j = 0; j < m; ++j) {
      p.schema.push_back({"c" + std::to_string(j), ColumnKind::kNumeric,
                          static_cast<std::size_t>(j)});
      p.training_means.push_back(u(rng));
    }
    const int k = width_dist(rng);
    std::vector<double> gammas(k);
    double gsum = 0.0;
    for (double& g : gammas) gsum += (g = pos(rng) + 1.0);
    for (int c = 0; c < k; ++c) {
      std::vector<double> w(m);
      double n2 = 0.0;
      for (double& x : w) {
        x = u(rng);
        n2 += x * x;
      }
      for (double& x : w) x /= std::sqrt(n2);
      auto b = MakeConjunct(w, u(rng), pos(rng), gammas[c] / gsum, p.c_factor);
      b.alpha = pos(rng);
      p.global.conjuncts.push_back(b);
    }
    double total = 0.0;
    for (const auto& b : p.global.conjuncts) total += b.gamma;
    if (std::abs(total - 1.0) > 1e-12) continue;
    const std::string text = SerializeProfile(p);
    const auto back = DeserializeProfile(text);
    ASSERT_EQ(back, p) << text;
    ASSERT_EQ(SerializeProfile(back), text);
  }
}

}  // namespace
}  // namespace ccsynth
