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

#ifndef SIMREFINE_KEYVALUE_HPP
#define SIMREFINE_KEYVALUE_HPP

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace simrefine {

// Plain-text key-value file. One entry per line: a key followed by one or
// more whitespace-separated values. A lone "=" after the key is accepted and
// ignored. Text after '#' is a comment. Later entries override earlier ones.
class KeyValueFile {
 public:
  struct Entry {
    std::string key;
    std::vector<std::string> values;
    int line = 0;
  };

  static KeyValueFile Parse(std::string_view text, std::string source = "<string>");
  static KeyValueFile Load(const std::filesystem::path& path);

  bool Has(std::string_view key) const;
  const Entry& Get(std::string_view key) const;

  std::string GetString(std::string_view key) const;
  double GetDouble(std::string_view key) const;
  long GetInt(std::string_view key) const;
  Eigen::Vector3d GetVec3(std::string_view key) const;

  std::string GetString(std::string_view key, std::string fallback) const;
  double GetDouble(std::string_view key, double fallback) const;
  long GetInt(std::string_view key, long fallback) const;
  Eigen::Vector3d GetVec3(std::string_view key, const Eigen::Vector3d& fallback) const;

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

 private:
  std::vector<Entry> entries_;
  std::string source_;
};

// Strict numeric parsing; throws ConfigError mentioning `context` on garbage.
double ParseDouble(std::string_view token, std::string_view context);
long ParseInt(std::string_view token, std::string_view context);

// Shortest text that parses back to the identical double.
std::string FormatExact(double value);

}  // namespace simrefine

#endif  // SIMREFINE_KEYVALUE_HPP
