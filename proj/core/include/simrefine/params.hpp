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

#ifndef SIMREFINE_PARAMS_HPP
#define SIMREFINE_PARAMS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace simrefine {

inline constexpr int kBendDirections = 3;       // warp, weft, bias
inline constexpr int kSamplesPerDirection = 5;  // stiffness samples per curve
inline constexpr int kBendingCount = kBendDirections * kSamplesPerDirection;
inline constexpr int kParameterCount = kBendingCount + 2;
inline constexpr int kAreaWeightIndex = kBendingCount;
inline constexpr int kWindSpeedIndex = kBendingCount + 1;

enum class BendDirection : int { kWarp = 0, kWeft = 1, kBias = 2 };

// Physical parameters of one flag simulation.
//   bending[d * 5 + s]: stiffness sample s of direction d (N*m)
//   area_weight:        fabric area density (kg/m^2)
//   wind_speed:         uniform wind along +x (m/s)
struct ParameterVector {
  std::array<double, kBendingCount> bending{};
  double area_weight = 0.0;
  double wind_speed = 0.0;

  // Flat view in canonical order: 15 bending, area weight, wind speed.
  double operator[](int i) const;
  double& operator[](int i);

  double Bending(BendDirection dir, int sample) const {
    return bending[static_cast<int>(dir) * kSamplesPerDirection + sample];
  }

  bool operator==(const ParameterVector&) const = default;
};

// Point of the optimizer's box [-1, +1]^17.
struct NormalizedParams {
  std::array<double, kParameterCount> values{};

  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
  bool operator==(const NormalizedParams&) const = default;
};

enum class Scale { kLinear, kLog };

struct ParameterBound {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::kLinear;
};

// Per-parameter bounds of the search box in canonical order.
class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::array<ParameterBound, kParameterCount> bounds);

  const ParameterBound& bound(int i) const { return bounds_[i]; }
  const std::array<ParameterBound, kParameterCount>& bounds() const { return bounds_; }

  // Throws ConfigError unless lower < upper everywhere and log bounds are > 0.
  void Validate() const;

 private:
  std::array<ParameterBound, kParameterCount> bounds_;
};

// Base-material bending stiffness (the k-bar values), one per coefficient.
struct BaseMaterial {
  std::array<double, kBendingCount> bending;
};

// Placeholder base material: 1e-5 N*m for every coefficient. Stand-in for a
// measured fabric; override with LoadBaseMaterial.
BaseMaterial DefaultBaseMaterial();

// Bending in [0.1 k, 10 k] (log scale), area weight in [0.10, 0.17] kg/m^2,
// wind in [0, 10] m/s (linear).
SearchSpace MakeSearchSpace(const BaseMaterial& base);
SearchSpace DefaultSearchSpace();

// "bend_warp_0" ... "bend_bias_4", "area_weight", "wind_speed".
const std::string& ParameterName(int index);
int ParameterIndex(std::string_view name);  // -1 when unknown

NormalizedParams Normalize(const ParameterVector& p, const SearchSpace& space);
ParameterVector Denormalize(const NormalizedParams& n, const SearchSpace& space);

// Uniform in the box; log-scaled parameters uniform in log domain.
ParameterVector SampleUniform(const SearchSpace& space, std::uint64_t seed);

// Denormalize of the all-zero point.
ParameterVector CenterOf(const SearchSpace& space);

// File formats. Search space: "<name> <lower> <upper> <linear|log>" per line.
// Base material and parameter vectors: "<name> <value>" per line.
SearchSpace LoadSearchSpace(const std::filesystem::path& path);
void SaveSearchSpace(const SearchSpace& space, const std::filesystem::path& path);
BaseMaterial LoadBaseMaterial(const std::filesystem::path& path);
ParameterVector LoadParameters(const std::filesystem::path& path);
void SaveParameters(const ParameterVector& p, const std::filesystem::path& path);
std::string FormatParameters(const ParameterVector& p);

}  // namespace simrefine

#endif  // SIMREFINE_PARAMS_HPP
