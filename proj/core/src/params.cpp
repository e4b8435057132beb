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

#include "simrefine/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "simrefine/error.hpp"
#include "simrefine/keyvalue.hpp"
#include "simrefine/random.hpp"

namespace simrefine {

namespace {

const std::array<std::string, kParameterCount>& Names() {
  static const std::array<std::string, kParameterCount> names = [] {
    std::array<std::string, kParameterCount> n;
    const char* dirs[kBendDirections] = {"warp", "weft", "bias"};
    for (int d = 0; d < kBendDirections; ++d) {
      for (int s = 0; s < kSamplesPerDirection; ++s) {
        n[d * kSamplesPerDirection + s] =
            std::string("bend_") + dirs[d] + "_" + std::to_string(s);
      }
    }
    n[kAreaWeightIndex] = "area_weight";
    n[kWindSpeedIndex] = "wind_speed";
    return n;
  }();
  return names;
}

double ToUnit(double value, const ParameterBound& b) {
  if (b.scale == Scale::kLog) {
    return (std::log(value) - std::log(b.lower)) /
           (std::log(b.upper) - std::log(b.lower));
  }
  return (value - b.lower) / (b.upper - b.lower);
}

double FromUnit(double u, const ParameterBound& b) {
  if (u <= 0.0) return b.lower;
  if (u >= 1.0) return b.upper;
  double v;
  if (b.scale == Scale::kLog) {
    const double lo = std::log(b.lower);
    v = std::exp(lo + u * (std::log(b.upper) - lo));
  } else {
    v = b.lower + u * (b.upper - b.lower);
  }
  // rounding only; inputs are already inside the box
  return std::clamp(v, b.lower, b.upper);
}

}  // namespace

double ParameterVector::operator[](int i) const {
  if (i < kBendingCount) return bending[i];
  return i == kAreaWeightIndex ? area_weight : wind_speed;
}

double& ParameterVector::operator[](int i) {
  if (i < kBendingCount) return bending[i];
  return i == kAreaWeightIndex ? area_weight : wind_speed;
}

SearchSpace::SearchSpace(std::array<ParameterBound, kParameterCount> bounds)
    : bounds_(std::move(bounds)) {
  Validate();
}

void SearchSpace::Validate() const {
  for (int i = 0; i < kParameterCount; ++i) {
    const auto& b = bounds_[i];
    if (!(b.lower < b.upper) || !std::isfinite(b.lower) || !std::isfinite(b.upper)) {
      throw ConfigError("search space: '" + b.name + "' needs finite lower < upper");
    }
    if (b.scale == Scale::kLog && b.lower <= 0.0) {
      throw ConfigError("search space: log-scaled '" + b.name + "' needs lower > 0");
    }
  }
}

BaseMaterial DefaultBaseMaterial() {
  BaseMaterial base;
  base.bending.fill(1e-5);
  return base;
}

SearchSpace MakeSearchSpace(const BaseMaterial& base) {
  std::array<ParameterBound, kParameterCount> bounds;
  for (int i = 0; i < kBendingCount; ++i) {
    bounds[i] = {Names()[i], 0.1 * base.bending[i], 10.0 * base.bending[i], Scale::kLog};
  }
  bounds[kAreaWeightIndex] = {Names()[kAreaWeightIndex], 0.10, 0.17, Scale::kLinear};
  bounds[kWindSpeedIndex] = {Names()[kWindSpeedIndex], 0.0, 10.0, Scale::kLinear};
  return SearchSpace(std::move(bounds));
}

SearchSpace DefaultSearchSpace() { return MakeSearchSpace(DefaultBaseMaterial()); }

const std::string& ParameterName(int index) { return Names().at(index); }

int ParameterIndex(std::string_view name) {
  const auto& n = Names();
  for (int i = 0; i < kParameterCount; ++i) {
    if (n[i] == name) return i;
  }
  return -1;
}

NormalizedParams Normalize(const ParameterVector& p, const SearchSpace& space) {
  NormalizedParams out;
  for (int i = 0; i < kParameterCount; ++i) {
    const auto& b = space.bound(i);
    const double v = p[i];
    if (!(v >= b.lower && v <= b.upper)) {
      throw BoundsError(b.name, "parameter '" + b.name + "' = " + FormatExact(v) +
                                    " outside [" + FormatExact(b.lower) + ", " +
                                    FormatExact(b.upper) + "]");
    }
    if (v == b.lower) {
      out[i] = -1.0;
    } else if (v == b.upper) {
      out[i] = 1.0;
    } else {
      out[i] = std::clamp(2.0 * ToUnit(v, b) - 1.0, -1.0, 1.0);
    }
  }
  return out;
}

ParameterVector Denormalize(const NormalizedParams& n, const SearchSpace& space) {
  ParameterVector p;
  for (int i = 0; i < kParameterCount; ++i) {
    const double v = n[i];
    if (!(v >= -1.0 && v <= 1.0)) {
      throw DomainError("normalized component " + std::to_string(i) + " (" +
                        ParameterName(i) + ") = " + FormatExact(v) +
                        " outside [-1, 1]");
    }
    p[i] = FromUnit(0.5 * (v + 1.0), space.bound(i));
  }
  return p;
}

ParameterVector SampleUniform(const SearchSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  ParameterVector p;
  for (int i = 0; i < kParameterCount; ++i) {
    p[i] = FromUnit(rng.Uniform(), space.bound(i));
  }
  return p;
}

ParameterVector CenterOf(const SearchSpace& space) {
  return Denormalize(NormalizedParams{}, space);
}

SearchSpace LoadSearchSpace(const std::filesystem::path& path) {
  const auto kv = KeyValueFile::Load(path);
  std::array<ParameterBound, kParameterCount> bounds;
  std::array<bool, kParameterCount> seen{};
  for (const auto& e : kv.entries()) {
    const std::string ctx = path.string() + ":" + std::to_string(e.line);
    const int idx = ParameterIndex(e.key);
    if (idx < 0) throw ConfigError(ctx + ": unknown parameter '" + e.key + "'");
    if (e.values.size() != 3) {
      throw ConfigError(ctx + ": expected '<name> <lower> <upper> <linear|log>'");
    }
    Scale scale;
    if (e.values[2] == "linear") {
      scale = Scale::kLinear;
    } else if (e.values[2] == "log") {
      scale = Scale::kLog;
    } else {
      throw ConfigError(ctx + ": scale must be 'linear' or 'log'");
    }
    bounds[idx] = {e.key, ParseDouble(e.values[0], ctx), ParseDouble(e.values[1], ctx),
                   scale};
    seen[idx] = true;
  }
  for (int i = 0; i < kParameterCount; ++i) {
    if (!seen[i]) {
      throw ConfigError(path.string() + ": missing parameter '" + ParameterName(i) + "'");
    }
  }
  return SearchSpace(std::move(bounds));
}

void SaveSearchSpace(const SearchSpace& space, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# name lower upper scale\n";
  for (const auto& b : space.bounds()) {
    out << b.name << ' ' << FormatExact(b.lower) << ' ' << FormatExact(b.upper) << ' '
        << (b.scale == Scale::kLog ? "log" : "linear") << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

BaseMaterial LoadBaseMaterial(const std::filesystem::path& path) {
  const auto kv = KeyValueFile::Load(path);
  BaseMaterial base;
  for (int i = 0; i < kBendingCount; ++i) {
    base.bending[i] = kv.GetDouble(ParameterName(i));
    if (!(base.bending[i] > 0.0)) {
      throw ConfigError(path.string() + ": '" + ParameterName(i) + "' must be > 0");
    }
  }
  return base;
}

ParameterVector LoadParameters(const std::filesystem::path& path) {
  const auto kv = KeyValueFile::Load(path);
  ParameterVector p;
  for (int i = 0; i < kParameterCount; ++i) p[i] = kv.GetDouble(ParameterName(i));
  for (const auto& e : kv.entries()) {
    if (ParameterIndex(e.key) < 0) {
      throw ConfigError(path.string() + ":" + std::to_string(e.line) +
                        ": unknown parameter '" + e.key + "'");
    }
  }
  return p;
}

std::string FormatParameters(const ParameterVector& p) {
  std::string text;
  for (int i = 0; i < kParameterCount; ++i) {
    text += ParameterName(i) + ' ' + FormatExact(p[i]) + '\n';
  }
  return text;
}

void SaveParameters(const ParameterVector& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << FormatParameters(p);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace simrefine
