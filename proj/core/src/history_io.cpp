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

#include "simrefine/history_io.hpp"

#include <fstream>
#include <sstream>

#include "simrefine/error.hpp"
#include "simrefine/keyvalue.hpp"

namespace simrefine {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Write-then-rename so an interrupted write never truncates the history.
template <typename Fn>
void WriteAtomically(const std::filesystem::path& path, Fn&& fn) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + tmp.string());
    fn(out);
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace

void SaveHistoryCsv(const EvaluationHistory& hist, const std::filesystem::path& path,
                    const std::vector<std::string>& coordinate_names) {
  if (!coordinate_names.empty() &&
      coordinate_names.size() != static_cast<std::size_t>(hist.dim)) {
    throw ShapeError("one coordinate name per history dimension");
  }
  WriteAtomically(path, [&](std::ostream& out) {
    out << "iteration";
    for (int d = 0; d < hist.dim; ++d) {
      out << ',' << (coordinate_names.empty() ? "x" + std::to_string(d) : coordinate_names[d]);
    }
    out << ",distance,penalized\n";
    for (std::size_t i = 0; i < hist.size(); ++i) {
      out << i + 1;
      for (int d = 0; d < hist.dim; ++d) out << ',' << FormatExact(hist.points[i][d]);
      out << ',' << FormatExact(hist.values[i]) << ',' << (hist.penalized[i] ? 1 : 0) << '\n';
    }
  });
}

EvaluationHistory LoadHistoryCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open history file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty history file");
  const auto header = SplitCsv(line);
  if (header.size() < 4 || header.front() != "iteration" ||
      header[header.size() - 2] != "distance" || header.back() != "penalized") {
    throw ConfigError(path.string() + ": not a history CSV");
  }
  const int dim = static_cast<int>(header.size()) - 3;
  EvaluationHistory hist(dim);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    const std::string ctx = path.string() + ":" + std::to_string(row);
    if (cells.size() != header.size()) throw ConfigError(ctx + ": wrong column count");
    if (ParseInt(cells[0], ctx) != static_cast<long>(hist.size()) + 1) {
      throw ConfigError(ctx + ": iterations must be consecutive from 1");
    }
    Eigen::VectorXd x(dim);
    for (int d = 0; d < dim; ++d) x[d] = ParseDouble(cells[1 + d], ctx);
    hist.Add(x, ParseDouble(cells[1 + dim], ctx), ParseInt(cells[2 + dim], ctx) != 0);
  }
  hist.Validate();
  return hist;
}

void SaveTimingsCsv(const EvaluationHistory& hist, const std::filesystem::path& path) {
  WriteAtomically(path, [&](std::ostream& out) {
    out << "iteration,wall_time_s\n";
    for (std::size_t i = 0; i < hist.size(); ++i) {
      out << i + 1 << ',' << FormatExact(hist.wall_time[i]) << '\n';
    }
  });
}

}  // namespace simrefine
