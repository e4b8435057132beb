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

#ifndef SIMREFINE_PIPELINE_HPP
#define SIMREFINE_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>

#include "simrefine/clothsim.hpp"
#include "simrefine/gpopt.hpp"
#include "simrefine/keyvalue.hpp"
#include "simrefine/params.hpp"
#include "simrefine/render.hpp"
#include "simrefine/spectral.hpp"

namespace simrefine {

// Everything a refinement run needs. Render settings are shared between
// target generation and the loop.
struct RefineConfig {
  SearchSpace space = DefaultSearchSpace();
  SimConfig sim;
  Camera camera = DefaultCamera();
  Vec3 light = DefaultLightDirection();
  DescriptorConfig descriptor;
  GPConfig gp;
  SuggestOptions suggest;
  int n_iterations = 40;
  int frames_per_clip = 30;
  int warmup_frames = 30;  // simulated frames dropped before the clip
  std::uint64_t seed = 0;
  bool allow_resample = false;
  std::filesystem::path output_dir;  // empty: keep the history in memory only

  void Validate() const;
  // Descriptor settings with frame count and rate taken from the clip.
  DescriptorConfig EffectiveDescriptor() const;
};

// Plain-text key-value config; see README for the keys. Unknown keys are
// rejected; relative paths resolve against the config file's directory.
RefineConfig LoadRefineConfig(const std::filesystem::path& path);
RefineConfig ParseRefineConfig(const KeyValueFile& kv, const std::filesystem::path& base_dir);

struct RefineResult {
  ParameterVector best_params;
  double best_distance = 0.0;
  EvaluationHistory history{kParameterCount};
};

// Reads a PGM sequence, matches it to the clip rate and frame size and keeps
// the last `frames_per_clip` frames.
VideoVolume IngestTarget(const std::filesystem::path& dir, const RefineConfig& cfg);
// Same conformance steps on an in-memory clip.
VideoVolume ConformTarget(VideoVolume video, const RefineConfig& cfg);

// Simulates p and renders the post-warm-up clip on the 8-bit pixel grid.
VideoVolume RenderClip(const ParameterVector& p, const RefineConfig& cfg);

// One objective evaluation: denormalize, simulate, render, describe, compare.
// Simulation failures propagate as NumericalError.
double Evaluate(const NormalizedParams& theta, const SpectralDescriptor& target,
                const RefineConfig& cfg);

// Called after every recorded evaluation.
using ProgressFn = std::function<void(const EvaluationHistory&)>;

// Runs the initial design plus n_iterations evaluations, continuing from
// `resume` when given. With an output directory the history is persisted
// after every evaluation.
RefineResult Refine(const VideoVolume& target, const RefineConfig& cfg,
                    std::optional<EvaluationHistory> resume = std::nullopt,
                    const ProgressFn& progress = {});

inline constexpr const char* kGroundTruthFile = "ground_truth.txt";
inline constexpr const char* kHistoryFile = "history.csv";
inline constexpr const char* kTimingsFile = "timings.csv";

// Simulates and renders all frames of p into `dir` in the ingestion format,
// plus a ground-truth parameter sidecar.
void GenTarget(const ParameterVector& p, const RefineConfig& cfg,
               const std::filesystem::path& dir);

// history.csv, distance/wind_speed/area_weight SVG plots and summary.txt.
void EmitReport(const RefineResult& result, const SearchSpace& space,
                const std::filesystem::path& dir,
                const std::optional<ParameterVector>& ground_truth = std::nullopt);

NormalizedParams ToNormalized(const Eigen::VectorXd& x);
Eigen::VectorXd ToEigen(const NormalizedParams& n);
std::vector<std::string> NormalizedColumnNames();

}  // namespace simrefine

#endif  // SIMREFINE_PIPELINE_HPP
