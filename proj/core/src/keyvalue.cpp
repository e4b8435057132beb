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

#include "simrefine/keyvalue.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simrefine/error.hpp"

namespace simrefine {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

double ParseDouble(std::string_view token, std::string_view context) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(context) + ": cannot parse '" +
                      std::string(token) + "' as a number");
  }
  return value;
}

long ParseInt(std::string_view token, std::string_view context) {
  long value = 0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(context) + ": cannot parse '" +
                      std::string(token) + "' as an integer");
  }
  return value;
}

std::string FormatExact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
  }
  return std::string(buf, ptr);
}

KeyValueFile KeyValueFile::Parse(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source_ = std::move(source);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    std::istringstream tokens{std::string(line)};
    Entry entry;
    entry.line = line_no;
    tokens >> entry.key;
    if (const auto eq = entry.key.find('='); eq != std::string::npos) {
      // "key=value" written without spaces
      std::string rest = entry.key.substr(eq + 1);
      entry.key.resize(eq);
      if (!rest.empty()) entry.values.push_back(rest);
    }
    std::string tok;
    while (tokens >> tok) {
      if (tok == "=" && entry.values.empty()) continue;
      if (entry.values.empty() && tok.front() == '=') tok.erase(0, 1);
      if (!tok.empty()) entry.values.push_back(tok);
    }
    if (entry.key.empty() || entry.values.empty()) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) +
                        ": expected '<key> <value>...'");
    }
    file.entries_.push_back(std::move(entry));
  }
  return file;
}

KeyValueFile KeyValueFile::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str(), path.string());
}

bool KeyValueFile::Has(std::string_view key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return true;
  }
  return false;
}

const KeyValueFile::Entry& KeyValueFile::Get(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) return *it;
  }
  throw ConfigError(source_ + ": missing key '" + std::string(key) + "'");
}

std::string KeyValueFile::GetString(std::string_view key) const {
  const auto& e = Get(key);
  std::string joined;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (i) joined += ' ';
    joined += e.values[i];
  }
  return joined;
}

double KeyValueFile::GetDouble(std::string_view key) const {
  const auto& e = Get(key);
  if (e.values.size() != 1) {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": '" + e.key +
                      "' expects one value");
  }
  return ParseDouble(e.values[0], source_ + ":" + std::to_string(e.line));
}

long KeyValueFile::GetInt(std::string_view key) const {
  const auto& e = Get(key);
  if (e.values.size() != 1) {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": '" + e.key +
                      "' expects one value");
  }
  return ParseInt(e.values[0], source_ + ":" + std::to_string(e.line));
}

Eigen::Vector3d KeyValueFile::GetVec3(std::string_view key) const {
  const auto& e = Get(key);
  if (e.values.size() != 3) {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": '" + e.key +
                      "' expects three values");
  }
  const std::string ctx = source_ + ":" + std::to_string(e.line);
  return {ParseDouble(e.values[0], ctx), ParseDouble(e.values[1], ctx),
          ParseDouble(e.values[2], ctx)};
}

std::string KeyValueFile::GetString(std::string_view key, std::string fallback) const {
  return Has(key) ? GetString(key) : fallback;
}

double KeyValueFile::GetDouble(std::string_view key, double fallback) const {
  return Has(key) ? GetDouble(key) : fallback;
}

long KeyValueFile::GetInt(std::string_view key, long fallback) const {
  return Has(key) ? GetInt(key) : fallback;
}

Eigen::Vector3d KeyValueFile::GetVec3(std::string_view key,
                                      const Eigen::Vector3d& fallback) const {
  return Has(key) ? GetVec3(key) : fallback;
}

}  // namespace simrefine
