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

#include "simrefine/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

#include "simrefine/error.hpp"
#include "simrefine/history_io.hpp"
#include "simrefine/video_io.hpp"

namespace simrefine {

namespace {

constexpr double kDegrees = std::numbers::pi / 180.0;
constexpr double kPenaltyFactor = 10.0;
constexpr double kPenaltyWithoutHistory = 1e3;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "seed", "n_iterations", "frames_per_clip", "warmup_frames", "allow_resample",
      "search_space", "base_material",
      "grid_nx", "grid_ny", "flag_width", "flag_height", "dt_output", "substeps", "n_frames",
      "damping", "gravity", "drag_radius", "air_viscosity", "wind_direction",
      "stretch_stiffness", "stretch_damping", "initial_yaw_deg", "stability_safety",
      "camera_position", "camera_look_at", "camera_fov_deg", "image_height", "image_width",
      "light_dir",
      "sigma_t", "sigma_xy", "top_k", "pool",
      "gp_lengthscale", "gp_signal_variance", "gp_noise", "gp_normalize_outputs",
      "initial_design", "candidates", "local_starts", "refit_every"};
  return keys;
}

double Bilinear(std::span<const double> img, int h, int w, double y, double x) {
  y = std::clamp(y, 0.0, h - 1.0);
  x = std::clamp(x, 0.0, w - 1.0);
  const int y0 = static_cast<int>(y), x0 = static_cast<int>(x);
  const int y1 = std::min(y0 + 1, h - 1), x1 = std::min(x0 + 1, w - 1);
  const double fy = y - y0, fx = x - x0;
  auto at = [&](int yy, int xx) { return img[static_cast<std::size_t>(yy) * w + xx]; };
  return (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x1)) +
         fy * ((1 - fx) * at(y1, x0) + fx * at(y1, x1));
}

double ClipFps(const RefineConfig& cfg) { return 1.0 / cfg.sim.dt_output; }

}  // namespace

void RefineConfig::Validate() const {
  space.Validate();
  camera.Validate();
  gp.Validate();
  if (n_iterations < 1) throw ConfigError("n_iterations must be at least 1");
  if (frames_per_clip < 1) throw ConfigError("frames_per_clip must be at least 1");
  if (warmup_frames < 0) throw ConfigError("warmup_frames must be non-negative");
  if (warmup_frames + frames_per_clip > sim.n_frames) {
    throw ConfigError("warmup_frames + frames_per_clip exceeds the simulated frame count (" +
                      std::to_string(sim.n_frames) + ")");
  }
  if (suggest.initial_design < 1) throw ConfigError("initial_design must be at least 1");
  if (suggest.candidates < 1) throw ConfigError("candidates must be at least 1");
  if (!(light.norm() > 0.0)) throw ConfigError("light direction must be non-zero");
}

DescriptorConfig RefineConfig::EffectiveDescriptor() const {
  DescriptorConfig d = descriptor;
  d.frames = frames_per_clip;
  d.fps = ClipFps(*this);
  return d;
}

RefineConfig ParseRefineConfig(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
  for (const auto& e : kv.entries()) {
    if (!KnownKeys().contains(e.key)) {
      throw ConfigError(kv.source() + ":" + std::to_string(e.line) + ": unknown key '" +
                        e.key + "'");
    }
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  RefineConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(kv.GetInt("seed", 0));
  cfg.n_iterations = static_cast<int>(kv.GetInt("n_iterations", cfg.n_iterations));
  cfg.frames_per_clip = static_cast<int>(kv.GetInt("frames_per_clip", cfg.frames_per_clip));
  cfg.warmup_frames = static_cast<int>(kv.GetInt("warmup_frames", cfg.warmup_frames));
  cfg.allow_resample = kv.GetInt("allow_resample", 0) != 0;

  if (kv.Has("search_space")) {
    cfg.space = LoadSearchSpace(resolve(kv.GetString("search_space")));
  } else if (kv.Has("base_material")) {
    cfg.space = MakeSearchSpace(LoadBaseMaterial(resolve(kv.GetString("base_material"))));
  }

  auto& s = cfg.sim;
  s.grid_nx = static_cast<int>(kv.GetInt("grid_nx", s.grid_nx));
  s.grid_ny = static_cast<int>(kv.GetInt("grid_ny", s.grid_ny));
  s.flag_width = kv.GetDouble("flag_width", s.flag_width);
  s.flag_height = kv.GetDouble("flag_height", s.flag_height);
  s.dt_output = kv.GetDouble("dt_output", s.dt_output);
  s.substeps = static_cast<int>(kv.GetInt("substeps", s.substeps));
  s.n_frames = static_cast<int>(kv.GetInt("n_frames", s.n_frames));
  s.damping = kv.GetDouble("damping", s.damping);
  s.gravity = kv.GetVec3("gravity", s.gravity);
  s.drag_radius = kv.GetDouble("drag_radius", s.drag_radius);
  s.air_viscosity = kv.GetDouble("air_viscosity", s.air_viscosity);
  s.wind_direction = kv.GetVec3("wind_direction", s.wind_direction);
  s.stretch_stiffness = kv.GetDouble("stretch_stiffness", s.stretch_stiffness);
  s.stretch_damping = kv.GetDouble("stretch_damping", s.stretch_damping);
  s.stability_safety = kv.GetDouble("stability_safety", s.stability_safety);
  s.initial_yaw = kv.GetDouble("initial_yaw_deg", s.initial_yaw / kDegrees) * kDegrees;
  if (!(s.wind_direction.norm() > 0.0)) throw ConfigError("wind_direction must be non-zero");
  s.wind_direction.normalize();

  auto& c = cfg.camera;
  c.position = kv.GetVec3("camera_position", c.position);
  c.look_at = kv.GetVec3("camera_look_at", c.look_at);
  c.vertical_fov = kv.GetDouble("camera_fov_deg", c.vertical_fov / kDegrees) * kDegrees;
  c.height = static_cast<int>(kv.GetInt("image_height", c.height));
  c.width = static_cast<int>(kv.GetInt("image_width", c.width));
  cfg.light = kv.GetVec3("light_dir", cfg.light).normalized();

  auto& d = cfg.descriptor;
  d.sigma_t = kv.GetDouble("sigma_t", d.sigma_t);
  d.sigma_xy = kv.GetDouble("sigma_xy", d.sigma_xy);
  d.k = static_cast<int>(kv.GetInt("top_k", d.k));
  d.pool = static_cast<int>(kv.GetInt("pool", d.pool));

  cfg.gp.lengthscale = kv.GetDouble("gp_lengthscale", cfg.gp.lengthscale);
  cfg.gp.signal_variance = kv.GetDouble("gp_signal_variance", cfg.gp.signal_variance);
  cfg.gp.noise = kv.GetDouble("gp_noise", cfg.gp.noise);
  cfg.gp.normalize_outputs = kv.GetInt("gp_normalize_outputs", 1) != 0;
  cfg.suggest.initial_design =
      static_cast<int>(kv.GetInt("initial_design", cfg.suggest.initial_design));
  cfg.suggest.candidates = static_cast<int>(kv.GetInt("candidates", cfg.suggest.candidates));
  cfg.suggest.local_starts =
      static_cast<int>(kv.GetInt("local_starts", cfg.suggest.local_starts));
  cfg.suggest.refit_every = static_cast<int>(kv.GetInt("refit_every", cfg.suggest.refit_every));

  cfg.Validate();
  return cfg;
}

RefineConfig LoadRefineConfig(const std::filesystem::path& path) {
  return ParseRefineConfig(KeyValueFile::Load(path), path.parent_path());
}

NormalizedParams ToNormalized(const Eigen::VectorXd& x) {
  if (x.size() != kParameterCount) throw ShapeError("expected a 17-dimensional point");
  NormalizedParams n;
  for (int i = 0; i < kParameterCount; ++i) n[i] = x[i];
  return n;
}

Eigen::VectorXd ToEigen(const NormalizedParams& n) {
  Eigen::VectorXd x(kParameterCount);
  for (int i = 0; i < kParameterCount; ++i) x[i] = n[i];
  return x;
}

std::vector<std::string> NormalizedColumnNames() {
  std::vector<std::string> names;
  for (int i = 0; i < kParameterCount; ++i) names.push_back(ParameterName(i));
  return names;
}

VideoVolume ConformTarget(VideoVolume video, const RefineConfig& cfg) {
  const double fps = ClipFps(cfg);
  if (std::abs(video.fps - fps) > 1e-6 * fps) {
    if (!cfg.allow_resample) {
      throw ConfigError("target video is at " + FormatExact(video.fps) + " fps, expected " +
                        FormatExact(fps) + " (set allow_resample to convert)");
    }
    // nearest-frame resampling
    const Volume& src = video.frames;
    const int count = static_cast<int>(std::floor(src.frames() * fps / video.fps));
    if (count < 1) throw IngestionError("target video too short to resample");
    Volume out(count, src.height(), src.width());
    for (int t = 0; t < count; ++t) {
      const int s = std::min(src.frames() - 1,
                             static_cast<int>(std::lround(t * video.fps / fps)));
      std::copy(src.frame(s).begin(), src.frame(s).end(), out.frame(t).begin());
    }
    video.frames = std::move(out);
    video.fps = fps;
  }

  const int th = cfg.camera.height, tw = cfg.camera.width;
  const Volume& src = video.frames;
  if (src.height() != th || src.width() != tw) {
    // center crop to the target aspect, then bilinear scaling
    const double aspect = static_cast<double>(tw) / th;
    double ch = src.height(), cw = src.height() * aspect;
    if (cw > src.width()) {
      cw = src.width();
      ch = src.width() / aspect;
    }
    const double oy = 0.5 * (src.height() - ch), ox = 0.5 * (src.width() - cw);
    Volume out(src.frames(), th, tw);
    for (int t = 0; t < src.frames(); ++t) {
      for (int y = 0; y < th; ++y) {
        const double sy = oy + (y + 0.5) * ch / th - 0.5;
        for (int x = 0; x < tw; ++x) {
          const double sx = ox + (x + 0.5) * cw / tw - 0.5;
          out.at(t, y, x) = Bilinear(src.frame(t), src.height(), src.width(), sy, sx);
        }
      }
    }
    video.frames = std::move(out);
  }

  const int keep = cfg.frames_per_clip;
  if (video.frames.frames() < keep) {
    throw IngestionError("target has " + std::to_string(video.frames.frames()) +
                         " frames, need at least " + std::to_string(keep));
  }
  if (video.frames.frames() > keep) {
    const Volume& full = video.frames;
    Volume tail(keep, full.height(), full.width());
    const int first = full.frames() - keep;
    for (int t = 0; t < keep; ++t) {
      std::copy(full.frame(first + t).begin(), full.frame(first + t).end(),
                tail.frame(t).begin());
    }
    video.frames = std::move(tail);
  }
  return video;
}

VideoVolume IngestTarget(const std::filesystem::path& dir, const RefineConfig& cfg) {
  return ConformTarget(ReadPgmSequence(dir), cfg);
}

VideoVolume RenderClip(const ParameterVector& p, const RefineConfig& cfg) {
  const MeshSequence seq = Simulate(p, cfg.sim);
  VideoVolume clip =
      RenderSequence(seq, cfg.camera, cfg.light, cfg.warmup_frames, cfg.frames_per_clip);
  QuantizeTo8Bit(clip.frames);
  return clip;
}

double Evaluate(const NormalizedParams& theta, const SpectralDescriptor& target,
                const RefineConfig& cfg) {
  const ParameterVector p = Denormalize(theta, cfg.space);
  const VideoVolume clip = RenderClip(p, cfg);
  return Distance(ComputeDescriptor(clip, cfg.EffectiveDescriptor()), target);
}

RefineResult Refine(const VideoVolume& target, const RefineConfig& cfg,
                    std::optional<EvaluationHistory> resume, const ProgressFn& progress) {
  cfg.Validate();
  const SpectralDescriptor target_desc = ComputeDescriptor(target, cfg.EffectiveDescriptor());

  RefineResult result;
  if (resume) {
    if (resume->dim != kParameterCount) {
      throw ConfigError("resume history has dimension " + std::to_string(resume->dim) +
                        ", expected " + std::to_string(kParameterCount));
    }
    resume->Validate();
    result.history = std::move(*resume);
  }
  auto& hist = result.history;

  if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);
  const auto names = NormalizedColumnNames();
  const std::size_t total =
      static_cast<std::size_t>(cfg.suggest.initial_design + cfg.n_iterations);

  while (hist.size() < total) {
    const Eigen::VectorXd x = SuggestNext(hist, cfg.gp, cfg.seed, cfg.suggest);
    const auto start = std::chrono::steady_clock::now();
    double value;
    bool penalized = false;
    try {
      value = Evaluate(ToNormalized(x), target_desc, cfg);
    } catch (const NumericalError&) {
      double worst = -1.0;
      for (std::size_t i = 0; i < hist.size(); ++i) {
        if (!hist.penalized[i]) worst = std::max(worst, hist.values[i]);
      }
      value = worst > 0.0 ? kPenaltyFactor * worst : kPenaltyWithoutHistory;
      penalized = true;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    hist.Add(x, value, penalized, seconds);

    if (!cfg.output_dir.empty()) {
      SaveHistoryCsv(hist, cfg.output_dir / kHistoryFile, names);
      SaveTimingsCsv(hist, cfg.output_dir / kTimingsFile);
    }
    if (progress) progress(hist);
  }

  if (hist.empty()) throw DomainError("refinement produced no evaluations");
  const std::size_t best = hist.BestIndex();
  result.best_distance = hist.values[best];
  result.best_params = Denormalize(ToNormalized(hist.points[best]), cfg.space);
  return result;
}

void GenTarget(const ParameterVector& p, const RefineConfig& cfg,
               const std::filesystem::path& dir) {
  Normalize(p, cfg.space);  // bounds check
  const MeshSequence seq = Simulate(p, cfg.sim);
  const VideoVolume video = RenderSequence(seq, cfg.camera, cfg.light);
  WritePgmSequence(video, dir);
  SaveParameters(p, dir / kGroundTruthFile);
}

}  // namespace simrefine
