// Copyright 2026 The simrefine Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "simrefine/error.hpp"
#include "simrefine/params.hpp"
#include "simrefine/random.hpp"

namespace simrefine {
namespace {

constexpr double kBase = 1e-5;

ParameterVector RandomInBounds(const SearchSpace& space, Rng& rng) {
  ParameterVector p;
  for (int i = 0; i < kParameterCount; ++i) {
    const auto& b = space.bound(i);
    p[i] = b.scale == Scale::kLog
               ? std::exp(rng.Uniform(std::log(b.lower), std::log(b.upper)))
               : rng.Uniform(b.lower, b.upper);
  }
  return p;
}

TEST(Params, DefaultSpaceMatchesSearchTable) {
  const SearchSpace space = DefaultSearchSpace();
  for (int i = 0; i < kBendingCount; ++i) {
    EXPECT_EQ(space.bound(i).scale, Scale::kLog);
    EXPECT_DOUBLE_EQ(space.bound(i).lower, 0.1 * kBase);
    EXPECT_DOUBLE_EQ(space.bound(i).upper, 10.0 * kBase);
  }
  EXPECT_EQ(space.bound(kAreaWeightIndex).scale, Scale::kLinear);
  EXPECT_EQ(space.bound(kAreaWeightIndex).lower, 0.10);
  EXPECT_EQ(space.bound(kAreaWeightIndex).upper, 0.17);
  EXPECT_EQ(space.bound(kWindSpeedIndex).lower, 0.0);
  EXPECT_EQ(space.bound(kWindSpeedIndex).upper, 10.0);
}

TEST(Params, NamesRoundTrip) {
  for (int i = 0; i < kParameterCount; ++i) {
    EXPECT_EQ(ParameterIndex(ParameterName(i)), i);
  }
  EXPECT_EQ(ParameterName(kWindSpeedIndex), "wind_speed");
  EXPECT_EQ(ParameterName(kAreaWeightIndex), "area_weight");
  EXPECT_EQ(ParameterIndex("no_such_parameter"), -1);
}

TEST(Normalize, WindMidpointIsZero) {
  ParameterVector p = CenterOf(DefaultSearchSpace());
  p.wind_speed = 5.0;
  EXPECT_EQ(Normalize(p, DefaultSearchSpace())[kWindSpeedIndex], 0.0);
}

TEST(Normalize, WindLowerBoundIsMinusOne) {
  ParameterVector p = CenterOf(DefaultSearchSpace());
  p.wind_speed = 0.0;
  EXPECT_EQ(Normalize(p, DefaultSearchSpace())[kWindSpeedIndex], -1.0);
}

TEST(Normalize, BendingAtBaseIsZero) {
  ParameterVector p = CenterOf(DefaultSearchSpace());
  p.bending.fill(kBase);
  const NormalizedParams n = Normalize(p, DefaultSearchSpace());
  for (int i = 0; i < kBendingCount; ++i) EXPECT_NEAR(n[i], 0.0, 1e-15);
}

TEST(Normalize, OutOfBoundsNamesParameter) {
  ParameterVector p = CenterOf(DefaultSearchSpace());
  p.area_weight = 0.2;
  try {
    Normalize(p, DefaultSearchSpace());
    FAIL() << "expected a bounds error";
  } catch (const BoundsError& e) {
    EXPECT_EQ(e.parameter(), "area_weight");
    EXPECT_NE(std::string(e.what()).find("area_weight"), std::string::npos);
  }
  p = CenterOf(DefaultSearchSpace());
  p.bending[7] = 1e-3;
  try {
    Normalize(p, DefaultSearchSpace());
    FAIL() << "expected a bounds error";
  } catch (const BoundsError& e) {
    EXPECT_EQ(e.parameter(), ParameterName(7));
  }
}

TEST(Normalize, NeverClampsSilently) {
  ParameterVector p = CenterOf(DefaultSearchSpace());
  p.wind_speed = -1e-9;
  EXPECT_THROW(Normalize(p, DefaultSearchSpace()), BoundsError);
  p.wind_speed = std::nan("");
  EXPECT_THROW(Normalize(p, DefaultSearchSpace()), BoundsError);
}

TEST(Denormalize, ZerosGiveCenter) {
  const ParameterVector p = Denormalize(NormalizedParams{}, DefaultSearchSpace());
  EXPECT_DOUBLE_EQ(p.wind_speed, 5.0);
  EXPECT_DOUBLE_EQ(p.area_weight, 0.135);
  for (double k : p.bending) EXPECT_NEAR(k, kBase, 1e-12 * kBase);
  EXPECT_EQ(p, CenterOf(DefaultSearchSpace()));
}

TEST(Denormalize, PlusOneGivesUpperBoundsExactly) {
  const SearchSpace space = DefaultSearchSpace();
  NormalizedParams n;
  n.values.fill(1.0);
  const ParameterVector p = Denormalize(n, space);
  for (int i = 0; i < kParameterCount; ++i) EXPECT_EQ(p[i], space.bound(i).upper);
  n.values.fill(-1.0);
  const ParameterVector q = Denormalize(n, space);
  for (int i = 0; i < kParameterCount; ++i) EXPECT_EQ(q[i], space.bound(i).lower);
}

TEST(Denormalize, OutsideBoxIsDomainError) {
  NormalizedParams n;
  n[3] = 1.0000001;
  EXPECT_THROW(Denormalize(n, DefaultSearchSpace()), DomainError);
  n[3] = std::nan("");
  EXPECT_THROW(Denormalize(n, DefaultSearchSpace()), DomainError);
}

TEST(Normalize, RoundTripRandomPoints) {
  const SearchSpace space = DefaultSearchSpace();
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const ParameterVector p = RandomInBounds(space, rng);
    const NormalizedParams n = Normalize(p, space);
    const ParameterVector back = Denormalize(n, space);
    const NormalizedParams again = Normalize(back, space);
    for (int i = 0; i < kParameterCount; ++i) {
      ASSERT_GE(n[i], -1.0);
      ASSERT_LE(n[i], 1.0);
      ASSERT_NEAR(back[i], p[i], 1e-12 * std::abs(p[i]) + 1e-300);
      ASSERT_NEAR(again[i], n[i], 1e-12);
    }
  }
}

TEST(Normalize, StrictlyIncreasing) {
  const SearchSpace space = DefaultSearchSpace();
  for (int i = 0; i < kParameterCount; ++i) {
    const auto& b = space.bound(i);
    double previous = -2.0;
    for (int s = 0; s <= 100; ++s) {
      ParameterVector p = CenterOf(space);
      const double t = s / 100.0;
      p[i] = b.scale == Scale::kLog ? b.lower * std::pow(b.upper / b.lower, t)
                                    : b.lower + t * (b.upper - b.lower);
      p[i] = std::clamp(p[i], b.lower, b.upper);
      const double n = Normalize(p, space)[i];
      ASSERT_GT(n, previous) << ParameterName(i) << " at t = " << t;
      previous = n;
    }
  }
}

TEST(SampleUniform, DeterministicForSeed) {
  const SearchSpace space = DefaultSearchSpace();
  EXPECT_EQ(SampleUniform(space, 42), SampleUniform(space, 42));
  EXPECT_NE(SampleUniform(space, 42), SampleUniform(space, 43));
}

TEST(SampleUniform, WindMeanNearMidpoint) {
  const SearchSpace space = DefaultSearchSpace();
  double sum = 0.0;
  constexpr int kSamples = 10000;
  for (int s = 0; s < kSamples; ++s) {
    const ParameterVector p = SampleUniform(space, s);
    ASSERT_GE(p.wind_speed, 0.0);
    ASSERT_LE(p.wind_speed, 10.0);
    sum += p.wind_speed;
  }
  const double mean = sum / kSamples;
  EXPECT_GE(mean, 4.8);
  EXPECT_LE(mean, 5.2);
}

TEST(SampleUniform, BendingMedianNearGeometricMidpoint) {
  const SearchSpace space = DefaultSearchSpace();
  std::vector<double> values;
  for (int s = 0; s < 10000; ++s) values.push_back(SampleUniform(space, 1000 + s).bending[4]);
  std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
  const double median = values[values.size() / 2];
  EXPECT_GE(median, 0.9 * kBase);
  EXPECT_LE(median, 1.1 * kBase);
}

TEST(SampleUniform, AlwaysWithinBounds) {
  const SearchSpace space = DefaultSearchSpace();
  for (int s = 0; s < 2000; ++s) {
    const ParameterVector p = SampleUniform(space, s);
    EXPECT_NO_THROW(Normalize(p, space));
  }
}

TEST(SearchSpace, RejectsInvertedAndNonPositiveLogBounds) {
  auto bounds = DefaultSearchSpace().bounds();
  bounds[kWindSpeedIndex].lower = 10.0;
  bounds[kWindSpeedIndex].upper = 0.0;
  EXPECT_THROW(SearchSpace(bounds).Validate(), ConfigError);
  bounds = DefaultSearchSpace().bounds();
  bounds[0].lower = 0.0;
  EXPECT_THROW(SearchSpace(bounds).Validate(), ConfigError);
}

class ParamsFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("simrefine_params_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(ParamsFiles, SearchSpaceRoundTrip) {
  const SearchSpace space = DefaultSearchSpace();
  SaveSearchSpace(space, dir_ / "space.txt");
  const SearchSpace loaded = LoadSearchSpace(dir_ / "space.txt");
  for (int i = 0; i < kParameterCount; ++i) {
    EXPECT_EQ(loaded.bound(i).name, space.bound(i).name);
    EXPECT_EQ(loaded.bound(i).lower, space.bound(i).lower);
    EXPECT_EQ(loaded.bound(i).upper, space.bound(i).upper);
    EXPECT_EQ(loaded.bound(i).scale, space.bound(i).scale);
  }
}

TEST_F(ParamsFiles, ParametersRoundTripExactly) {
  const ParameterVector p = SampleUniform(DefaultSearchSpace(), 5);
  SaveParameters(p, dir_ / "p.txt");
  EXPECT_EQ(LoadParameters(dir_ / "p.txt"), p);
}

TEST_F(ParamsFiles, BaseMaterialScalesBounds) {
  {
    std::ofstream out(dir_ / "base.txt");
    out << "# fabric\n";
    for (int i = 0; i < kBendingCount; ++i) {
      out << ParameterName(i) << (i == 0 ? " 2e-5\n" : " 1e-5\n");
    }
  }
  const BaseMaterial base = LoadBaseMaterial(dir_ / "base.txt");
  EXPECT_EQ(base.bending[0], 2e-5);
  EXPECT_EQ(base.bending[1], 1e-5);
  const SearchSpace space = MakeSearchSpace(base);
  EXPECT_DOUBLE_EQ(space.bound(0).lower, 2e-6);
  EXPECT_DOUBLE_EQ(space.bound(0).upper, 2e-4);
}

TEST_F(ParamsFiles, IncompleteBaseMaterialIsConfigError) {
  std::ofstream(dir_ / "base.txt") << "bend_warp_0 2e-5\n";
  EXPECT_THROW(LoadBaseMaterial(dir_ / "base.txt"), ConfigError);
}

TEST_F(ParamsFiles, MissingParameterIsConfigError) {
  std::ofstream(dir_ / "p.txt") << "wind_speed 3\n";
  EXPECT_THROW(LoadParameters(dir_ / "p.txt"), ConfigError);
  std::ofstream(dir_ / "q.txt") << "bogus 3\n";
  EXPECT_THROW(LoadParameters(dir_ / "q.txt"), ConfigError);
}

}  // namespace
}  // namespace simrefine
