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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "simrefine/error.hpp"
#include "simrefine/random.hpp"
#include "simrefine/spectral.hpp"

namespace simrefine {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> RandomSignal(Rng& rng, int n) {
  std::vector<double> s(n);
  for (double& v : s) v = rng.Uniform(-1.0, 1.0);
  return s;
}

VideoVolume Make(int t, int h, int w, auto&& fn, double fps = 25.0) {
  VideoVolume v{Volume(t, h, w), fps};
  for (int k = 0; k < t; ++k)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) v.frames.at(k, y, x) = fn(k, y, x);
  return v;
}

// ---- kernels ---------------------------------------------------------------

TEST(Kernels, GaussianTruncatedAtThreeSigmaAndNormalized) {
  for (double sigma : {0.5, 1.0, 2.0, 3.3}) {
    const auto k = GaussianKernel(sigma);
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    ASSERT_EQ(static_cast<int>(k.size()), 2 * r + 1);
    double sum = 0.0;
    for (double v : k) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-15);
    for (int j = 0; j <= r; ++j) EXPECT_EQ(k[r + j], k[r - j]);
    EXPECT_NEAR(k[r + 1] / k[r], std::exp(-0.5 / (sigma * sigma)), 1e-14);
  }
  EXPECT_THROW(GaussianKernel(0.0), DomainError);
}

TEST(Kernels, DerivativeIsOddWithZeroSum) {
  const auto d = GaussianDerivativeKernel(2.0);
  const int r = static_cast<int>(d.size()) / 2;
  double sum = 0.0, moment = 0.0;
  for (int j = -r; j <= r; ++j) {
    sum += d[r + j];
    moment += j * d[r + j];
    EXPECT_EQ(d[r + j], -d[r - j]);
  }
  EXPECT_NEAR(sum, 0.0, 1e-15);
  EXPECT_NEAR(moment, 1.0, 1e-14);
}

// ---- temporal Gaussian -----------------------------------------------------

TEST(TemporalGaussian, ConstantVideoUnchanged) {
  const VideoVolume v = Make(12, 5, 6, [](int, int y, int x) { return 0.1 * y + 0.03 * x; });
  const VideoVolume out = TemporalGaussian(v, 1.0);
  ASSERT_EQ(out.frames.frames(), 12);
  for (std::size_t i = 0; i < v.frames.data().size(); ++i) {
    EXPECT_NEAR(out.frames.data()[i], v.frames.data()[i], 1e-15);
  }
  EXPECT_EQ(out.fps, v.fps);
}

TEST(TemporalGaussian, ImpulseRevealsKernel) {
  const VideoVolume v = Make(15, 3, 3, [](int t, int y, int x) {
    return t == 7 && y == 1 && x == 2 ? 1.0 : 0.0;
  });
  const VideoVolume out = TemporalGaussian(v, 1.0);
  const auto k = GaussianKernel(1.0);
  for (int t = 0; t < 15; ++t) {
    const int off = t - 7;
    const double expected = std::abs(off) <= 3 ? k[3 + off] : 0.0;
    EXPECT_NEAR(out.frames.at(t, 1, 2), expected, 1e-15) << t;
    EXPECT_EQ(out.frames.at(t, 0, 0), 0.0);
  }
}

TEST(TemporalGaussian, ReducesWhiteNoiseVariance) {
  Rng rng(8);
  const VideoVolume v = Make(30, 8, 8, [&](int, int, int) { return rng.Uniform(); });
  const VideoVolume out = TemporalGaussian(v, 1.0);
  auto temporal_variance = [](const Volume& vol) {
    double total = 0.0;
    for (std::size_t p = 0; p < vol.frame_size(); ++p) {
      double m = 0.0, s = 0.0;
      for (int t = 0; t < vol.frames(); ++t) m += vol.frame(t)[p];
      m /= vol.frames();
      for (int t = 0; t < vol.frames(); ++t) s += std::pow(vol.frame(t)[p] - m, 2);
      total += s / vol.frames();
    }
    return total / vol.frame_size();
  };
  EXPECT_LT(temporal_variance(out.frames), temporal_variance(v.frames));
}

TEST(TemporalGaussian, TooShortInputRejected) {
  const VideoVolume v = Make(6, 4, 4, [](int, int, int) { return 0.0; });
  EXPECT_THROW(TemporalGaussian(v, 1.0), ShapeError);
  EXPECT_NO_THROW(TemporalGaussian(Make(7, 4, 4, [](int, int, int) { return 0.0; }), 1.0));
  EXPECT_THROW(TemporalGaussian(v, -1.0), DomainError);
}

// ---- spatial derivatives ---------------------------------------------------

TEST(SpatialDerivatives, ShapesAreHalvedWithFloor) {
  const VideoVolume v = Make(3, 11, 9, [](int, int, int) { return 0.0; });
  const FilteredVolumes f = SpatialDerivatives(v, 2.0);
  EXPECT_EQ(f.dx.frames(), 3);
  EXPECT_EQ(f.dx.height(), 5);
  EXPECT_EQ(f.dx.width(), 4);
  EXPECT_EQ(f.dy.height(), 5);
  EXPECT_EQ(f.dy.width(), 4);
  EXPECT_THROW(SpatialDerivatives(Make(1, 3, 9, [](int, int, int) { return 0.0; }), 2.0),
               ShapeError);
}

TEST(SpatialDerivatives, ConstantFramesGiveZero) {
  const VideoVolume v = Make(2, 20, 24, [](int t, int, int) { return 0.3 + 0.1 * t; });
  const FilteredVolumes f = SpatialDerivatives(v, 2.0);
  for (double d : f.dx.data()) EXPECT_NEAR(d, 0.0, 1e-15);
  for (double d : f.dy.data()) EXPECT_NEAR(d, 0.0, 1e-15);
}

TEST(SpatialDerivatives, RampGivesSlopeInInterior) {
  const double slope = 0.013;
  const VideoVolume v = Make(1, 40, 48, [&](int, int, int x) { return slope * x; });
  const FilteredVolumes f = SpatialDerivatives(v, 2.0);
  // replicate padding reaches 6 input pixels (3 pooled) into the frame
  for (int y = 0; y < f.dx.height(); ++y) {
    for (int x = 4; x < f.dx.width() - 4; ++x) {
      EXPECT_NEAR(f.dx.at(0, y, x), slope, 1e-6);
      EXPECT_NEAR(f.dy.at(0, y, x), 0.0, 1e-6);
    }
  }
}

TEST(SpatialDerivatives, TransposeSwapsRoles) {
  Rng rng(21);
  const VideoVolume v = Make(2, 16, 16, [&](int, int, int) { return rng.Uniform(); });
  VideoVolume vt{Volume(2, 16, 16), 25.0};
  for (int t = 0; t < 2; ++t)
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) vt.frames.at(t, x, y) = v.frames.at(t, y, x);
  const FilteredVolumes a = SpatialDerivatives(v, 2.0);
  const FilteredVolumes b = SpatialDerivatives(vt, 2.0);
  for (int t = 0; t < 2; ++t) {
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) {
        EXPECT_NEAR(a.dx.at(t, y, x), b.dy.at(t, x, y), 1e-14);
        EXPECT_NEAR(a.dy.at(t, y, x), b.dx.at(t, x, y), 1e-14);
      }
    }
  }
}

// ---- Hanning ---------------------------------------------------------------

TEST(Hanning, EndpointsAreZero) {
  for (int n : {2, 3, 8, 30, 31}) {
    const auto w = Hanning(n);
    EXPECT_NEAR(w.front(), 0.0, 1e-16);
    EXPECT_NEAR(w.back(), 0.0, 1e-16);
  }
}

TEST(Hanning, OddMidpointIsOne) {
  for (int n : {3, 5, 31}) EXPECT_NEAR(Hanning(n)[(n - 1) / 2], 1.0, 1e-16);
}

TEST(Hanning, FourPoints) {
  const auto w = Hanning(4);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_NEAR(w[0], 0.0, 1e-16);
  EXPECT_NEAR(w[1], 0.75, 1e-15);
  EXPECT_NEAR(w[2], 0.75, 1e-15);
  EXPECT_NEAR(w[3], 0.0, 1e-16);
}

TEST(Hanning, TooShortIsDomainError) {
  EXPECT_THROW(Hanning(1), DomainError);
  EXPECT_THROW(Hanning(0), DomainError);
}

// ---- DFT and periodogram ---------------------------------------------------

TEST(Dft, MatchesNaiveTransform) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + static_cast<int>(rng.Below(57));
    const auto s = RandomSignal(rng, n);
    const auto fast = Dft(s);
    const auto slow = oracle::NaiveDft(s);
    ASSERT_EQ(static_cast<int>(fast.size()), n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) {
      ASSERT_NEAR(fast[j].real(), slow[j].real(), 1e-9) << "n=" << n << " bin " << j;
      ASSERT_NEAR(fast[j].imag(), slow[j].imag(), 1e-9) << "n=" << n << " bin " << j;
    }
  }
}

TEST(Dft, Parseval) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + static_cast<int>(rng.Below(57));
    const auto s = RandomSignal(rng, n);
    const auto half = Dft(s);
    double time_energy = 0.0, freq_energy = 0.0;
    for (double v : s) time_energy += v * v;
    for (int j = 0; j < n; ++j) {
      // full spectrum from the half spectrum by conjugate symmetry
      const auto f = j <= n / 2 ? half[j] : std::conj(half[n - j]);
      freq_energy += std::norm(f);
    }
    EXPECT_NEAR(time_energy, freq_energy / n, 1e-9);
  }
}

TEST(Periodogram, ConstantSignalIsDcOnly) {
  const int n = 30;
  const double c = 0.7;
  const std::vector<double> s(n, c);
  const Periodogram p = DftPeriodogram(s, 25.0);
  ASSERT_EQ(p.power.size(), 16u);
  EXPECT_NEAR(p.power[0], n * c * c, 1e-12);
  for (std::size_t b = 1; b < p.power.size(); ++b) EXPECT_NEAR(p.power[b], 0.0, 1e-12);
}

TEST(Periodogram, CosinePeaksAtItsBin) {
  for (int n : {16, 30, 31}) {
    for (int m = 1; m < (n - 1) / 2; ++m) {
      std::vector<double> s(n);
      for (int t = 0; t < n; ++t) s[t] = std::cos(2.0 * kPi * m * t / n);
      const Periodogram p = DftPeriodogram(s, 25.0);
      const auto naive = oracle::NaiveDft(s);
      EXPECT_NEAR(p.power[m], n / 4.0, 1e-9);
      EXPECT_NEAR(p.power[m], std::norm(naive[m]) / n, 1e-9);
      for (int b = 0; b <= n / 2; ++b) {
        if (b != m) EXPECT_NEAR(p.power[b], 0.0, 1e-9);
      }
    }
  }
}

TEST(Periodogram, FrequenciesAndBins) {
  const std::vector<double> s(30, 0.0);
  const Periodogram p = DftPeriodogram(s, 25.0);
  ASSERT_EQ(p.frequencies.size(), 16u);
  for (int b = 0; b < 16; ++b) EXPECT_DOUBLE_EQ(p.frequencies[b], b * 25.0 / 30.0);
  EXPECT_DOUBLE_EQ(p.frequencies.back(), 12.5);
  EXPECT_EQ(DftPeriodogram(std::vector<double>(31, 0.0), 25.0).power.size(), 16u);
}

TEST(Periodogram, MatchesNaiveOnRandomSignals) {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(63));
    const auto s = RandomSignal(rng, n);
    const Periodogram p = DftPeriodogram(s, 10.0);
    const auto naive = oracle::NaiveDft(s);
    for (int b = 0; b <= n / 2; ++b) {
      EXPECT_GE(p.power[b], 0.0);
      EXPECT_NEAR(p.power[b], std::norm(naive[b]) / n, 1e-9);
    }
  }
}

// ---- top-k -----------------------------------------------------------------

TEST(TopK, SingleSinusoid) {
  const int n = 30;
  std::vector<double> s(n);
  for (int t = 0; t < n; ++t) s[t] = 0.5 * std::sin(2.0 * kPi * 4 * t / n);
  const Periodogram p = DftPeriodogram(s, 25.0);
  const auto peaks = TopKSelect(p.power, p.frequencies, 1);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].power, 0.25 * n / 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(peaks[0].frequency, 4 * 25.0 / n);
}

TEST(TopK, AllZeroSpectrumPicksLowestNonDcFrequency) {
  const std::vector<double> power(16, 0.0);
  std::vector<double> freqs(16);
  for (int b = 0; b < 16; ++b) freqs[b] = b * 25.0 / 30.0;
  const auto peaks = TopKSelect(power, freqs, 1);
  EXPECT_EQ(peaks[0].power, 0.0);
  EXPECT_DOUBLE_EQ(peaks[0].frequency, 25.0 / 30.0);
}

TEST(TopK, TwoTonesStrongerFirst) {
  const int n = 32;
  std::vector<double> s(n);
  for (int t = 0; t < n; ++t) {
    s[t] = 0.3 * std::cos(2.0 * kPi * 3 * t / n) + 0.9 * std::cos(2.0 * kPi * 9 * t / n);
  }
  const Periodogram p = DftPeriodogram(s, 25.0);
  const auto peaks = TopKSelect(p.power, p.frequencies, 2);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_DOUBLE_EQ(peaks[0].frequency, 9 * 25.0 / n);
  EXPECT_DOUBLE_EQ(peaks[1].frequency, 3 * 25.0 / n);
  EXPECT_GT(peaks[0].power, peaks[1].power);
}

TEST(TopK, DcIsNeverSelected) {
  const std::vector<double> power = {100.0, 1.0, 2.0};
  const std::vector<double> freqs = {0.0, 1.0, 2.0};
  const auto peaks = TopKSelect(power, freqs, 2);
  EXPECT_EQ(peaks[0].frequency, 2.0);
  EXPECT_EQ(peaks[1].frequency, 1.0);
}

TEST(TopK, TooManyPeaksIsDomainError) {
  const std::vector<double> power(4, 1.0), freqs = {0, 1, 2, 3};
  EXPECT_THROW(TopKSelect(power, freqs, 4), DomainError);
  EXPECT_THROW(TopKSelect(power, freqs, 0), DomainError);
  EXPECT_NO_THROW(TopKSelect(power, freqs, 3));
}

// ---- spectral decomposition ------------------------------------------------

FilteredVolumes Channels(const VideoVolume& v) { return {v.frames, v.frames, v.fps}; }

TEST(SpectralDecompose, UniformSinusoidGivesUniformMaps) {
  const int n = 30;
  const VideoVolume v = Make(n, 6, 7, [&](int t, int, int) {
    return 0.4 + 0.2 * std::sin(2.0 * kPi * 3.0 * t / 25.0);
  });
  const SpectralMaps maps = SpectralDecompose(Channels(v), 1);
  ASSERT_EQ(maps.power.frames(), 2);
  const double bin = 25.0 / n;
  const double nearest = std::round(3.0 / bin) * bin;
  for (int c = 0; c < 2; ++c) {
    for (double f : maps.frequency.frame(c)) EXPECT_DOUBLE_EQ(f, nearest);
    for (double p : maps.power.frame(c)) EXPECT_EQ(p, maps.power.frame(0)[0]);
  }
  EXPECT_GT(maps.power.frame(0)[0], 0.0);
}

TEST(SpectralDecompose, TemporallyConstantGivesZeroPower) {
  Rng rng(4);
  std::vector<double> still(5 * 5);
  for (double& s : still) s = rng.Uniform();
  const VideoVolume v = Make(30, 5, 5, [&](int, int y, int x) { return still[y * 5 + x]; });
  const SpectralMaps maps = SpectralDecompose(Channels(v), 2);
  for (double p : maps.power.data()) EXPECT_EQ(p, 0.0);
}

TEST(SpectralDecompose, PixelPermutationCommutes) {
  Rng rng(13);
  const int h = 4, w = 5, n = 24;
  const VideoVolume v = Make(n, h, w, [&](int, int, int) { return rng.Uniform(); });
  std::vector<int> perm(h * w);
  for (int i = 0; i < h * w; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  VideoVolume pv{Volume(n, h, w), v.fps};
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < h * w; ++i) pv.frames.frame(t)[perm[i]] = v.frames.frame(t)[i];
  const SpectralMaps a = SpectralDecompose(Channels(v), 1);
  const SpectralMaps b = SpectralDecompose(Channels(pv), 1);
  for (int c = 0; c < a.power.frames(); ++c) {
    for (int i = 0; i < h * w; ++i) {
      EXPECT_EQ(b.power.frame(c)[perm[i]], a.power.frame(c)[i]);
      EXPECT_EQ(b.frequency.frame(c)[perm[i]], a.frequency.frame(c)[i]);
    }
  }
}

TEST(SpectralDecompose, MatchesWindowedNaiveTransform) {
  Rng rng(99);
  const int n = 20;
  const VideoVolume v = Make(n, 3, 3, [&](int, int, int) { return rng.Uniform(); });
  const SpectralMaps maps = SpectralDecompose(Channels(v), 1);
  const auto window = Hanning(n);
  for (int p = 0; p < 9; ++p) {
    std::vector<double> s(n);
    double mean = 0.0;
    for (int t = 0; t < n; ++t) mean += v.frames.frame(t)[p];
    mean /= n;
    for (int t = 0; t < n; ++t) s[t] = (v.frames.frame(t)[p] - mean) * window[t];
    const auto spec = oracle::NaiveDft(s);
    int best = 1;
    for (int b = 2; b <= n / 2; ++b) {
      if (std::norm(spec[b]) > std::norm(spec[best])) best = b;
    }
    EXPECT_NEAR(maps.power.frame(0)[p], std::norm(spec[best]) / n, 1e-12);
    EXPECT_DOUBLE_EQ(maps.frequency.frame(0)[p], best * 25.0 / n);
  }
}

TEST(SpectralDecompose, RangesHoldOnRandomInput) {
  Rng rng(31);
  const VideoVolume v = Make(17, 6, 6, [&](int, int, int) { return rng.Uniform(-3, 3); }, 12.0);
  const SpectralMaps maps = SpectralDecompose(Channels(v), 3);
  EXPECT_EQ(maps.power.frames(), 6);
  for (double p : maps.power.data()) EXPECT_GE(p, 0.0);
  for (double f : maps.frequency.data()) {
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 6.0);
  }
}

// ---- descriptor ------------------------------------------------------------

VideoVolume Waving(double phase_speed, int frames = 30) {
  return Make(frames, 64, 64, [&](int t, int y, int x) {
    const double band = std::sin(0.3 * x + 0.2 * y - phase_speed * t);
    return 0.5 + 0.3 * band * (x > 16 && x < 48 ? 1.0 : 0.2);
  });
}

TEST(Descriptor, DefaultLength) {
  EXPECT_EQ(DescriptorConfig{}.length(), 784);
  const SpectralDescriptor d = ComputeDescriptor(Waving(0.7), DescriptorConfig{});
  EXPECT_EQ(d.values.size(), 784u);
  DescriptorConfig k2;
  k2.k = 2;
  k2.pool = 7;
  EXPECT_EQ(ComputeDescriptor(Waving(0.7), k2).values.size(), static_cast<std::size_t>(k2.length()));
}

TEST(Descriptor, IdenticalVideosIdenticalDescriptors) {
  const SpectralDescriptor a = ComputeDescriptor(Waving(0.7));
  const SpectralDescriptor b = ComputeDescriptor(Waving(0.7));
  EXPECT_EQ(a, b);
  EXPECT_EQ(Distance(a, b), 0.0);
}

TEST(Descriptor, ConstantVideoHasZeroPowerEntries) {
  const VideoVolume v = Make(30, 48, 48, [](int, int y, int x) { return (x * y % 7) / 7.0; });
  const SpectralDescriptor d = ComputeDescriptor(v);
  const std::size_t half = d.values.size() / 2;
  for (std::size_t i = 0; i < half; ++i) EXPECT_EQ(d.values[i], 0.0);
  for (std::size_t i = half; i < d.values.size(); ++i) {
    EXPECT_GE(d.values[i], 0.0);
    EXPECT_LE(d.values[i], 1.0);
  }
}

TEST(Descriptor, SeparatesDifferentMotion) {
  const SpectralDescriptor a = ComputeDescriptor(Waving(0.7));
  const SpectralDescriptor b = ComputeDescriptor(Waving(0.75));
  const SpectralDescriptor c = ComputeDescriptor(Waving(2.0));
  EXPECT_GT(Distance(a, c), Distance(a, b));
}

TEST(Descriptor, WrongFrameCountOrRateIsShapeError) {
  EXPECT_THROW(ComputeDescriptor(Waving(0.7, 29)), ShapeError);
  VideoVolume v = Waving(0.7);
  v.fps = 30.0;
  EXPECT_THROW(ComputeDescriptor(v), ShapeError);
}

// ---- distance --------------------------------------------------------------

TEST(Distance, Basics) {
  SpectralDescriptor a{{1.0, 0.0, 0.0}}, b{{0.0, 1.0, 0.0}};
  EXPECT_EQ(Distance(a, a), 0.0);
  EXPECT_EQ(Distance(a, b), 2.0);
  EXPECT_THROW(Distance(a, SpectralDescriptor{{1.0}}), ShapeError);
}

TEST(Distance, SymmetricNonNegativeAndZeroOnlyIfEqual) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    SpectralDescriptor a{RandomSignal(rng, 50)}, b{RandomSignal(rng, 50)};
    EXPECT_EQ(Distance(a, b), Distance(b, a));
    EXPECT_GT(Distance(a, b), 0.0);
    b.values = a.values;
    b.values[rng.Below(50)] += 1e-6;
    EXPECT_GT(Distance(a, b), 0.0);
  }
}

// ---- export ----------------------------------------------------------------

TEST(Export, CsvAndHeatmaps) {
  const auto dir = std::filesystem::temp_directory_path() / "simrefine_spectral_export";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const VideoVolume v = Waving(0.7);
  const SpectralDescriptor d = ComputeDescriptor(v);
  WriteDescriptorCsv(dir / "d.csv", {"clip"}, {d});
  std::ifstream in(dir / "d.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header.substr(0, 9), "label,d0,");
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 784);
  EXPECT_EQ(row.substr(0, 5), "clip,");

  const SpectralMaps maps =
      SpectralDecompose(SpatialDerivatives(TemporalGaussian(v, 1.0), 2.0), 1);
  WriteSpectralHeatmaps(maps, dir / "maps");
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "maps")) {
    files += e.path().extension() == ".pgm";
  }
  EXPECT_EQ(files, 4);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace simrefine
