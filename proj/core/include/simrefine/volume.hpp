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

#ifndef SIMREFINE_VOLUME_HPP
#define SIMREFINE_VOLUME_HPP

#include <cassert>
#include <span>
#include <vector>

namespace simrefine {

// Dense frames x height x width array, frame-major then row-major.
class Volume {
 public:
  Volume() = default;
  Volume(int frames, int height, int width, double fill = 0.0)
      : frames_(frames),
        height_(height),
        width_(width),
        data_(static_cast<std::size_t>(frames) * height * width, fill) {}

  int frames() const { return frames_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t frame_size() const { return static_cast<std::size_t>(height_) * width_; }
  bool empty() const { return data_.empty(); }

  double& at(int t, int y, int x) { return data_[index(t, y, x)]; }
  double at(int t, int y, int x) const { return data_[index(t, y, x)]; }

  std::span<double> frame(int t) { return {data_.data() + t * frame_size(), frame_size()}; }
  std::span<const double> frame(int t) const {
    return {data_.data() + t * frame_size(), frame_size()};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Volume&) const = default;

 private:
  std::size_t index(int t, int y, int x) const {
    assert(t >= 0 && t < frames_ && y >= 0 && y < height_ && x >= 0 && x < width_);
    return (static_cast<std::size_t>(t) * height_ + y) * width_ + x;
  }

  int frames_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Grayscale clip, pixel values in [0, 1].
struct VideoVolume {
  Volume frames;
  double fps = 25.0;

  bool operator==(const VideoVolume&) const = default;
};

}  // namespace simrefine

#endif  // SIMREFINE_VOLUME_HPP
