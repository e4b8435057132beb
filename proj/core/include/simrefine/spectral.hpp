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

#ifndef SIMREFINE_SPECTRAL_HPP
#define SIMREFINE_SPECTRAL_HPP

#include <complex>
#include <filesystem>
#include <span>
#include <vector>

#include "simrefine/volume.hpp"

namespace simrefine {

// x- and y-oriented Gaussian-derivative responses, each 2x2 max-pooled.
struct FilteredVolumes {
  Volume dx;
  Volume dy;
  double fps = 25.0;
};

// Per-pixel top-k spectral peaks. Channel c * k + i holds peak i of input
// channel c (c = 0: dx, c = 1: dy); power >= 0, frequency in Hz.
struct SpectralMaps {
  Volume power;
  Volume frequency;
  int k = 1;
  double fps = 25.0;
};

struct SpectralPeak {
  double power = 0.0;
  double frequency = 0.0;
};

struct Periodogram {
  std::vector<double> power;        // bins 0 .. floor(N/2)
  std::vector<double> frequencies;  // Hz, bin * fps / N
};

struct SpectralDescriptor {
  std::vector<double> values;
  bool operator==(const SpectralDescriptor&) const = default;
};

struct DescriptorConfig {
  int frames = 30;
  double fps = 25.0;
  double sigma_t = 1.0;
  double sigma_xy = 2.0;
  int k = 1;
  int pool = 14;  // output grid is pool x pool per channel

  int length() const { return 2 * 2 * k * pool * pool; }
};

// Normalized 0th-order kernel over [-ceil(3 sigma), ceil(3 sigma)], unit sum.
std::vector<double> GaussianKernel(double sigma);
// 1st-order kernel on the same support, antisymmetric with sum_j j*d[j] = 1,
// so correlating it with a ramp of slope s returns s.
std::vector<double> GaussianDerivativeKernel(double sigma);

// Per-pixel temporal smoothing with replicate padding.
VideoVolume TemporalGaussian(const VideoVolume& video, double sigma_t);
FilteredVolumes SpatialDerivatives(const VideoVolume& video, double sigma_xy);

// w[i] = 0.5 (1 - cos(2 pi i / (n - 1))).
std::vector<double> Hanning(int n);

// Real-input half spectrum F[0 .. N/2] of sum_n f[n] exp(-2 pi j b n / N).
std::vector<std::complex<double>> Dft(std::span<const double> signal);
// I[b] = |F[b]|^2 / N, no window applied.
Periodogram DftPeriodogram(std::span<const double> signal, double fps);

// k strongest non-DC bins by descending power, ties to the lower frequency.
std::vector<SpectralPeak> TopKSelect(std::span<const double> power,
                                     std::span<const double> frequencies, int k);

// Per pixel: remove temporal mean, Hanning window, DFT, periodogram, top-k.
SpectralMaps SpectralDecompose(const FilteredVolumes& fv, int k);

SpectralDescriptor ComputeDescriptor(const VideoVolume& video,
                                     const DescriptorConfig& cfg = {});

// Squared Euclidean distance.
double Distance(const SpectralDescriptor& a, const SpectralDescriptor& b);

// One CSV row per descriptor: "<label>,v0,v1,...", with a header row.
void WriteDescriptorCsv(const std::filesystem::path& path,
                        const std::vector<std::string>& labels,
                        const std::vector<SpectralDescriptor>& descriptors);
// Each map channel as a PGM scaled by its own maximum.
void WriteSpectralHeatmaps(const SpectralMaps& maps, const std::filesystem::path& dir);

}  // namespace simrefine

#endif  // SIMREFINE_SPECTRAL_HPP
