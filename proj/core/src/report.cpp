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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "simrefine/error.hpp"
#include "simrefine/history_io.hpp"
#include "simrefine/pipeline.hpp"

namespace simrefine {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

struct Series {
  std::string title;
  std::string ylabel;
  std::vector<double> values;
  std::optional<double> reference;
};

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string PlotSvg(const Series& s) {
  const std::size_t n = s.values.size();
  double lo = *std::min_element(s.values.begin(), s.values.end());
  double hi = *std::max_element(s.values.begin(), s.values.end());
  if (s.reference) {
    lo = std::min(lo, *s.reference);
    hi = std::max(hi, *s.reference);
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double i) { return kLeft + (n > 1 ? i / (n - 1) : 0.5) * pw; };
  auto py = [&](double v) { return kTop + (hi - v) / (hi - lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << s.title << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(v) + 4
        << "\" text-anchor=\"end\">" << Num(v) << "</text>\n";
  }
  const std::size_t xticks = std::min<std::size_t>(n, 6);
  for (std::size_t t = 0; t < xticks; ++t) {
    const std::size_t i = xticks > 1 ? t * (n - 1) / (xticks - 1) : 0;
    svg << "<text x=\"" << px(static_cast<double>(i)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << i + 1 << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">iteration</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\">" << s.ylabel << "</text>\n";

  if (s.reference) {
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << py(*s.reference)
        << "\" y2=\"" << py(*s.reference)
        << "\" stroke=\"gray\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    svg << px(static_cast<double>(i)) << "," << py(s.values[i]) << (i + 1 < n ? " " : "");
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    svg << "<circle cx=\"" << px(static_cast<double>(i)) << "\" cy=\"" << py(s.values[i])
        << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

void EmitReport(const RefineResult& result, const SearchSpace& space,
                const std::filesystem::path& dir,
                const std::optional<ParameterVector>& ground_truth) {
  const auto& hist = result.history;
  if (hist.empty()) throw DomainError("cannot report on an empty history");

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  SaveHistoryCsv(hist, dir / kHistoryFile, NormalizedColumnNames());

  Series distance{"Descriptor distance", "distance", {}, std::nullopt};
  Series wind{"Wind speed", "wind speed (m/s)", {}, std::nullopt};
  Series area{"Area weight", "area weight (kg/m^2)", {}, std::nullopt};
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const ParameterVector p = Denormalize(ToNormalized(hist.points[i]), space);
    distance.values.push_back(hist.values[i]);
    wind.values.push_back(p.wind_speed);
    area.values.push_back(p.area_weight);
  }
  if (ground_truth) {
    wind.reference = ground_truth->wind_speed;
    area.reference = ground_truth->area_weight;
  }
  WriteText(dir / "distance.svg", PlotSvg(distance));
  WriteText(dir / "wind_speed.svg", PlotSvg(wind));
  WriteText(dir / "area_weight.svg", PlotSvg(area));

  std::ostringstream summary;
  const std::size_t best = hist.BestIndex();
  std::size_t penalized = 0;
  for (bool b : hist.penalized) penalized += b ? 1 : 0;
  summary << "evaluations " << hist.size() << "\n"
          << "penalized " << penalized << "\n"
          << "best_iteration " << best + 1 << "\n"
          << "best_distance " << FormatExact(result.best_distance) << "\n";
  if (ground_truth) {
    summary << "ground_truth_wind_speed " << FormatExact(ground_truth->wind_speed) << "\n"
            << "ground_truth_area_weight " << FormatExact(ground_truth->area_weight) << "\n";
  }
  summary << "\n# best parameters\n" << FormatParameters(result.best_params);
  WriteText(dir / "summary.txt", summary.str());
  SaveParameters(result.best_params, dir / "best_params.txt");
}

}  // namespace simrefine
