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

// simrefine: command-line front end for target generation, refinement and the
// individual pipeline stages.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "simrefine/error.hpp"
#include "simrefine/history_io.hpp"
#include "simrefine/mesh_io.hpp"
#include "simrefine/pipeline.hpp"
#include "simrefine/spectral.hpp"
#include "simrefine/video_io.hpp"

namespace fs = std::filesystem;
using namespace simrefine;

namespace {

RefineConfig ConfigOrDefault(const std::string& path) {
  return path.empty() ? RefineConfig{} : LoadRefineConfig(path);
}

ParameterVector ParamsOrCenter(const std::string& path, const RefineConfig& cfg) {
  return path.empty() ? CenterOf(cfg.space) : LoadParameters(path);
}

int RunGenTarget(const std::string& params, const std::string& config, const fs::path& out) {
  const RefineConfig cfg = ConfigOrDefault(config);
  const ParameterVector p = LoadParameters(params);
  GenTarget(p, cfg, out);
  std::cout << "wrote " << cfg.sim.n_frames << " frames to " << out.string() << "\n";
  return 0;
}

int RunRefine(const fs::path& target_dir, const std::string& config, const fs::path& out,
              bool resume) {
  RefineConfig cfg = LoadRefineConfig(config);
  cfg.output_dir = out;
  const VideoVolume target = IngestTarget(target_dir, cfg);

  std::optional<EvaluationHistory> previous;
  if (resume && fs::exists(out / kHistoryFile)) {
    previous = LoadHistoryCsv(out / kHistoryFile);
    std::cerr << "resuming after " << previous->size() << " evaluations\n";
  }

  const RefineResult result =
      Refine(target, cfg, std::move(previous), [](const EvaluationHistory& h) {
        const std::size_t i = h.size() - 1;
        std::cerr << "iter " << h.size() << " distance " << h.values[i]
                  << (h.penalized[i] ? " (penalized)" : "") << " best "
                  << h.values[h.BestIndex()] << "\n";
      });

  std::optional<ParameterVector> truth;
  if (fs::exists(target_dir / kGroundTruthFile)) {
    truth = LoadParameters(target_dir / kGroundTruthFile);
  }
  EmitReport(result, cfg.space, out, truth);
  std::cout << "best distance " << FormatExact(result.best_distance) << "\n"
            << FormatParameters(result.best_params);
  return 0;
}

int RunSimulate(const std::string& params, const std::string& config, const fs::path& out,
                const std::string& obj_dir) {
  const RefineConfig cfg = ConfigOrDefault(config);
  const MeshSequence seq = Simulate(ParamsOrCenter(params, cfg), cfg.sim);
  WriteMeshSequence(seq, out);
  if (!obj_dir.empty()) WriteObjFrames(seq, obj_dir);
  std::cout << "wrote " << seq.frames.size() << " frames to " << out.string() << "\n";
  return 0;
}

int RunRender(const fs::path& mesh, const std::string& config, const fs::path& out) {
  const RefineConfig cfg = ConfigOrDefault(config);
  const MeshSequence seq = ReadMeshSequence(mesh);
  VideoVolume video = RenderSequence(seq, cfg.camera, cfg.light);
  QuantizeTo8Bit(video.frames);
  WritePgmSequence(video, out);
  std::cout << "wrote " << video.frames.frames() << " frames to " << out.string() << "\n";
  return 0;
}

int RunFeatures(const fs::path& video_dir, const std::string& config, const fs::path& out,
                const std::string& heatmaps) {
  const RefineConfig cfg = ConfigOrDefault(config);
  const VideoVolume video = IngestTarget(video_dir, cfg);
  const DescriptorConfig dcfg = cfg.EffectiveDescriptor();
  const SpectralDescriptor desc = ComputeDescriptor(video, dcfg);
  WriteDescriptorCsv(out, {video_dir.filename().string()}, {desc});
  if (!heatmaps.empty()) {
    const VideoVolume smoothed = TemporalGaussian(video, dcfg.sigma_t);
    WriteSpectralHeatmaps(SpectralDecompose(SpatialDerivatives(smoothed, dcfg.sigma_xy), dcfg.k),
                          heatmaps);
  }
  std::cout << "descriptor length " << desc.values.size() << " written to " << out.string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical parameter refinement of a simulated flag from video"};
  app.require_subcommand(1);

  std::string params, config, out, target, video, mesh, obj_dir, heatmaps;
  bool resume = false;

  auto* gen = app.add_subcommand("gen-target", "Render a synthetic target clip from parameters");
  gen->add_option("--params", params, "Parameter file (name value per line)")->required();
  gen->add_option("--config", config, "Refinement config file");
  gen->add_option("--out", out, "Output directory")->required();

  auto* refine = app.add_subcommand("refine", "Estimate parameters that reproduce a target clip");
  refine->add_option("--target", target, "Target PGM directory")->required();
  refine->add_option("--config", config, "Refinement config file")->required();
  refine->add_option("--out", out, "Output directory")->required();
  refine->add_flag("--resume", resume, "Continue from <out>/history.csv");

  auto* simulate = app.add_subcommand("simulate", "Run the cloth simulation");
  simulate->add_option("--params", params, "Parameter file (default: search-space center)");
  simulate->add_option("--config", config, "Refinement config file");
  simulate->add_option("--out", out, "Output mesh sequence file")->required();
  simulate->add_option("--obj-dir", obj_dir, "Also write one OBJ per frame here");

  auto* render = app.add_subcommand("render", "Render a mesh sequence to PGM frames");
  render->add_option("--mesh", mesh, "Mesh sequence file")->required();
  render->add_option("--config", config, "Refinement config file");
  render->add_option("--out", out, "Output directory")->required();

  auto* features = app.add_subcommand("features", "Compute the spectral descriptor of a clip");
  features->add_option("--video", video, "PGM directory")->required();
  features->add_option("--config", config, "Refinement config file");
  features->add_option("--out", out, "Output CSV")->required();
  features->add_option("--heatmaps", heatmaps, "Also write power/frequency maps here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitCodeFor(ErrorKind::kConfig);
  }

  try {
    if (*gen) return RunGenTarget(params, config, out);
    if (*refine) return RunRefine(target, config, out, resume);
    if (*simulate) return RunSimulate(params, config, out, obj_dir);
    if (*render) return RunRender(mesh, config, out);
    if (*features) return RunFeatures(video, config, out, heatmaps);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
