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

#include "simrefine/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "simrefine/error.hpp"
#include "simrefine/keyvalue.hpp"
#include "simrefine/video_io.hpp"

namespace simrefine {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> FftwAlloc(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// Batched real-to-complex transform of `count` contiguous signals of length n.
class BatchedRealDft {
 public:
  BatchedRealDft(int n, int count)
      : n_(n), bins_(n / 2 + 1), count_(count),
        in_(FftwAlloc<double>(static_cast<std::size_t>(n) * count)),
        out_(FftwAlloc<fftw_complex>(static_cast<std::size_t>(bins_) * count)) {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan_ = fftw_plan_many_dft_r2c(1, &n_, count_, in_.get(), nullptr, 1, n_, out_.get(),
                                   nullptr, 1, bins_, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw NumericalError("FFTW could not create a plan");
  }
  ~BatchedRealDft() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan_);
  }
  BatchedRealDft(const BatchedRealDft&) = delete;
  BatchedRealDft& operator=(const BatchedRealDft&) = delete;

  double* input(int signal) { return in_.get() + static_cast<std::size_t>(signal) * n_; }
  const fftw_complex* output(int signal) const {
    return out_.get() + static_cast<std::size_t>(signal) * bins_;
  }
  int bins() const { return bins_; }
  void Execute() { fftw_execute(plan_); }

 private:
  int n_;
  int bins_;
  int count_;
  FftwBuffer<double> in_;
  FftwBuffer<fftw_complex> out_;
  fftw_plan plan_ = nullptr;
};

int KernelRadius(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)); }

// out[i] = sum_j kernel[j + r] * in[clamp(i + j)] over a strided line.
void CorrelateLine(const double* in, double* out, int n, std::ptrdiff_t stride,
                   const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -r; j <= r; ++j) {
      const int src = std::clamp(i + j, 0, n - 1);
      acc += kernel[j + r] * in[src * stride];
    }
    out[i * stride] = acc;
  }
}

// Separable 2-D correlation of one frame: `along_x` on rows, then `along_y`
// on columns.
void Separable(std::span<const double> frame, int h, int w, const std::vector<double>& along_x,
               const std::vector<double>& along_y, std::vector<double>& tmp,
               std::vector<double>& out) {
  tmp.resize(frame.size());
  out.resize(frame.size());
  for (int y = 0; y < h; ++y) {
    CorrelateLine(frame.data() + static_cast<std::size_t>(y) * w,
                  tmp.data() + static_cast<std::size_t>(y) * w, w, 1, along_x);
  }
  for (int x = 0; x < w; ++x) {
    CorrelateLine(tmp.data() + x, out.data() + x, h, w, along_y);
  }
}

void MaxPool2(const std::vector<double>& in, int h, int w, std::span<double> out) {
  const int oh = h / 2, ow = w / 2;
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double* r0 = in.data() + static_cast<std::size_t>(2 * y) * w + 2 * x;
      const double* r1 = r0 + w;
      out[static_cast<std::size_t>(y) * ow + x] = std::max({r0[0], r0[1], r1[0], r1[1]});
    }
  }
}

// Adaptive average pooling of one h x w map onto a g x g grid.
void AveragePool(std::span<const double> map, int h, int w, int g, std::vector<double>& out) {
  for (int gy = 0; gy < g; ++gy) {
    const int y0 = gy * h / g, y1 = std::max(y0 + 1, (gy + 1) * h / g);
    for (int gx = 0; gx < g; ++gx) {
      const int x0 = gx * w / g, x1 = std::max(x0 + 1, (gx + 1) * w / g);
      double acc = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) acc += map[static_cast<std::size_t>(y) * w + x];
      }
      out.push_back(acc / ((y1 - y0) * (x1 - x0)));
    }
  }
}

void DecomposeChannel(const Volume& in, int channel, int k, double fps,
                      const std::vector<double>& window, SpectralMaps& maps) {
  const int n = in.frames();
  const int pixels = static_cast<int>(in.frame_size());
  BatchedRealDft dft(n, pixels);
  const auto& data = in.data();
  for (int p = 0; p < pixels; ++p) {
    double* sig = dft.input(p);
    const double first = data[p];
    double offset = 0.0;
    for (int t = 0; t < n; ++t) offset += data[static_cast<std::size_t>(t) * pixels + p] - first;
    const double mean = first + offset / n;
    for (int t = 0; t < n; ++t) {
      sig[t] = (data[static_cast<std::size_t>(t) * pixels + p] - mean) * window[t];
    }
  }
  dft.Execute();

  const int bins = dft.bins();
  std::vector<double> power(bins), freqs(bins);
  for (int b = 0; b < bins; ++b) freqs[b] = b * fps / n;
  for (int p = 0; p < pixels; ++p) {
    const fftw_complex* spec = dft.output(p);
    for (int b = 0; b < bins; ++b) {
      power[b] = (spec[b][0] * spec[b][0] + spec[b][1] * spec[b][1]) / n;
    }
    const auto peaks = TopKSelect(power, freqs, k);
    for (int i = 0; i < k; ++i) {
      maps.power.frame(channel * k + i)[p] = peaks[i].power;
      maps.frequency.frame(channel * k + i)[p] = peaks[i].frequency;
    }
  }
}

}  // namespace

std::vector<double> GaussianKernel(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("Gaussian sigma must be positive");
  const int r = KernelRadius(sigma);
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int j = -r; j <= r; ++j) {
    k[j + r] = std::exp(-0.5 * j * j / (sigma * sigma));
    sum += k[j + r];
  }
  for (double& v : k) v /= sum;
  return k;
}

std::vector<double> GaussianDerivativeKernel(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("Gaussian sigma must be positive");
  const int r = KernelRadius(sigma);
  std::vector<double> k(2 * r + 1);
  double moment = 0.0;
  for (int j = -r; j <= r; ++j) {
    k[j + r] = j * std::exp(-0.5 * j * j / (sigma * sigma));
    moment += j * k[j + r];
  }
  for (double& v : k) v /= moment;
  return k;
}

VideoVolume TemporalGaussian(const VideoVolume& video, double sigma_t) {
  const auto kernel = GaussianKernel(sigma_t);
  const Volume& in = video.frames;
  if (in.frames() < static_cast<int>(kernel.size())) {
    throw ShapeError("temporal Gaussian needs at least " + std::to_string(kernel.size()) +
                     " frames, got " + std::to_string(in.frames()));
  }
  VideoVolume out{Volume(in.frames(), in.height(), in.width()), video.fps};
  const auto stride = static_cast<std::ptrdiff_t>(in.frame_size());
  for (std::size_t p = 0; p < in.frame_size(); ++p) {
    CorrelateLine(in.data().data() + p, out.frames.data().data() + p, in.frames(), stride,
                  kernel);
  }
  return out;
}

FilteredVolumes SpatialDerivatives(const VideoVolume& video, double sigma_xy) {
  const Volume& in = video.frames;
  if (in.height() < 4 || in.width() < 4) {
    throw ShapeError("spatial derivatives need frames of at least 4x4 pixels");
  }
  const auto smooth = GaussianKernel(sigma_xy);
  const auto deriv = GaussianDerivativeKernel(sigma_xy);
  const int h = in.height(), w = in.width();
  FilteredVolumes out;
  out.fps = video.fps;
  out.dx = Volume(in.frames(), h / 2, w / 2);
  out.dy = Volume(in.frames(), h / 2, w / 2);
  std::vector<double> tmp, filtered;
  for (int t = 0; t < in.frames(); ++t) {
    Separable(in.frame(t), h, w, deriv, smooth, tmp, filtered);
    MaxPool2(filtered, h, w, out.dx.frame(t));
    Separable(in.frame(t), h, w, smooth, deriv, tmp, filtered);
    MaxPool2(filtered, h, w, out.dy.frame(t));
  }
  return out;
}

std::vector<double> Hanning(int n) {
  if (n < 2) throw DomainError("Hanning window needs n >= 2");
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  }
  return w;
}

std::vector<std::complex<double>> Dft(std::span<const double> signal) {
  const int n = static_cast<int>(signal.size());
  if (n < 1) throw DomainError("DFT of an empty signal");
  BatchedRealDft dft(n, 1);
  std::copy(signal.begin(), signal.end(), dft.input(0));
  dft.Execute();
  std::vector<std::complex<double>> out(dft.bins());
  for (int b = 0; b < dft.bins(); ++b) out[b] = {dft.output(0)[b][0], dft.output(0)[b][1]};
  return out;
}

Periodogram DftPeriodogram(std::span<const double> signal, double fps) {
  const int n = static_cast<int>(signal.size());
  if (n < 2) throw DomainError("periodogram needs at least 2 samples");
  const auto spec = Dft(signal);
  Periodogram out;
  out.power.resize(spec.size());
  out.frequencies.resize(spec.size());
  for (std::size_t b = 0; b < spec.size(); ++b) {
    out.power[b] = std::norm(spec[b]) / n;
    out.frequencies[b] = static_cast<double>(b) * fps / n;
  }
  return out;
}

std::vector<SpectralPeak> TopKSelect(std::span<const double> power,
                                     std::span<const double> frequencies, int k) {
  if (power.size() != frequencies.size()) throw ShapeError("power/frequency size mismatch");
  const int available = static_cast<int>(power.size()) - 1;  // DC excluded
  if (k < 1 || k > available) {
    throw DomainError("top-k needs 1 <= k <= " + std::to_string(std::max(available, 0)) +
                      " non-DC bins, got k = " + std::to_string(k));
  }
  std::vector<SpectralPeak> peaks;
  peaks.reserve(k);
  std::vector<char> taken(power.size(), 0);
  for (int i = 0; i < k; ++i) {
    int best = -1;
    for (int b = 1; b < static_cast<int>(power.size()); ++b) {
      if (taken[b]) continue;
      if (best < 0 || power[b] > power[best] ||
          (power[b] == power[best] && frequencies[b] < frequencies[best])) {
        best = b;
      }
    }
    taken[best] = 1;
    peaks.push_back({power[best], frequencies[best]});
  }
  return peaks;
}

SpectralMaps SpectralDecompose(const FilteredVolumes& fv, int k) {
  const int n = fv.dx.frames();
  if (n < 4) throw ShapeError("spectral decomposition needs at least 4 frames");
  if (fv.dy.frames() != n || fv.dy.height() != fv.dx.height() ||
      fv.dy.width() != fv.dx.width()) {
    throw ShapeError("filtered volumes differ in shape");
  }
  if (k < 1 || k > n / 2) {
    throw DomainError("top-k needs 1 <= k <= " + std::to_string(n / 2));
  }
  SpectralMaps maps;
  maps.k = k;
  maps.fps = fv.fps;
  maps.power = Volume(2 * k, fv.dx.height(), fv.dx.width());
  maps.frequency = Volume(2 * k, fv.dx.height(), fv.dx.width());
  const auto window = Hanning(n);
  DecomposeChannel(fv.dx, 0, k, fv.fps, window, maps);
  DecomposeChannel(fv.dy, 1, k, fv.fps, window, maps);
  return maps;
}

SpectralDescriptor ComputeDescriptor(const VideoVolume& video, const DescriptorConfig& cfg) {
  if (video.frames.frames() != cfg.frames) {
    throw ShapeError("descriptor expects " + std::to_string(cfg.frames) + " frames, got " +
                     std::to_string(video.frames.frames()));
  }
  if (std::abs(video.fps - cfg.fps) > 1e-9 * cfg.fps) {
    throw ShapeError("descriptor expects " + FormatExact(cfg.fps) + " fps, got " +
                     FormatExact(video.fps));
  }
  const VideoVolume smoothed = TemporalGaussian(video, cfg.sigma_t);
  const FilteredVolumes filtered = SpatialDerivatives(smoothed, cfg.sigma_xy);
  const SpectralMaps maps = SpectralDecompose(filtered, cfg.k);

  const double nyquist = 0.5 * cfg.fps;
  const int h = maps.power.height(), w = maps.power.width();
  SpectralDescriptor desc;
  desc.values.reserve(cfg.length());
  std::vector<double> scaled(maps.power.frame_size());
  for (int c = 0; c < maps.power.frames(); ++c) {
    const auto src = maps.power.frame(c);
    std::transform(src.begin(), src.end(), scaled.begin(),
                   [](double v) { return std::log1p(v); });
    AveragePool(scaled, h, w, cfg.pool, desc.values);
  }
  for (int c = 0; c < maps.frequency.frames(); ++c) {
    const auto src = maps.frequency.frame(c);
    std::transform(src.begin(), src.end(), scaled.begin(),
                   [nyquist](double v) { return v / nyquist; });
    AveragePool(scaled, h, w, cfg.pool, desc.values);
  }
  return desc;
}

double Distance(const SpectralDescriptor& a, const SpectralDescriptor& b) {
  if (a.values.size() != b.values.size()) {
    throw ShapeError("descriptor lengths differ: " + std::to_string(a.values.size()) + " vs " +
                     std::to_string(b.values.size()));
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double diff = a.values[i] - b.values[i];
    d += diff * diff;
  }
  return d;
}

void WriteDescriptorCsv(const std::filesystem::path& path,
                        const std::vector<std::string>& labels,
                        const std::vector<SpectralDescriptor>& descriptors) {
  if (labels.size() != descriptors.size()) throw ShapeError("one label per descriptor");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const std::size_t len = descriptors.empty() ? 0 : descriptors.front().values.size();
  out << "label";
  for (std::size_t i = 0; i < len; ++i) out << ",d" << i;
  out << '\n';
  for (std::size_t r = 0; r < descriptors.size(); ++r) {
    if (descriptors[r].values.size() != len) throw ShapeError("descriptor lengths differ");
    out << labels[r];
    for (double v : descriptors[r].values) out << ',' << FormatExact(v);
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void WriteSpectralHeatmaps(const SpectralMaps& maps, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const char* names[2] = {"dx", "dy"};
  auto write = [&](const Volume& v, const char* kind) {
    for (int c = 0; c < v.frames(); ++c) {
      const auto src = v.frame(c);
      const double peak = *std::max_element(src.begin(), src.end());
      std::vector<double> scaled(src.begin(), src.end());
      if (peak > 0.0) {
        for (double& s : scaled) s /= peak;
      }
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%s_peak%d.pgm", kind, names[c / maps.k],
                    c % maps.k);
      WritePgm(dir / name, v.height(), v.width(), scaled);
    }
  };
  write(maps.power, "power");
  write(maps.frequency, "frequency");
}

}  // namespace simrefine
