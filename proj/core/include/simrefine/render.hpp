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

#ifndef SIMREFINE_RENDER_HPP
#define SIMREFINE_RENDER_HPP

#include <array>
#include <vector>

#include "simrefine/clothsim.hpp"
#include "simrefine/volume.hpp"

namespace simrefine {

inline constexpr double kBackgroundShade = 0.5;
inline constexpr double kMinShade = 0.1;

// Pinhole camera with world +z as the up direction.
struct Camera {
  Vec3 position{-2.2, -2.7, 1.2};
  Vec3 look_at{0.55, 0.55, 0.2};
  double vertical_fov = 0.6;  // radians
  int height = 224;
  int width = 224;

  void Validate() const;
};

// Default camera and light: a three-quarter side view about 4 m from the
// flag that sees it both across and along the wind.
Camera DefaultCamera();
Vec3 DefaultLightDirection();

// Rotates the camera position about the vertical axis through look_at.
Camera OrbitCamera(const Camera& cam, double yaw);

struct Image {
  int height = 0;
  int width = 0;
  std::vector<double> pixels;  // row-major, row 0 at the top

  double at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

// Flat-shaded z-buffered rasterization: background 0.5, cloth max(0.1, |n.l|).
Image RenderFrame(const VectorField& positions,
                  const std::vector<std::array<int, 3>>& triangles, const Camera& cam,
                  const Vec3& light_dir);
Image RenderFrame(const ClothMesh& mesh, const Camera& cam, const Vec3& light_dir);

// Renders `count` frames starting at `first` (count < 0: through the end).
VideoVolume RenderSequence(const MeshSequence& seq, const Camera& cam, const Vec3& light_dir,
                           int first = 0, int count = -1);

// Snaps pixel values to the 8-bit grid used by the PGM exchange format.
void QuantizeTo8Bit(Volume& volume);

}  // namespace simrefine

#endif  // SIMREFINE_RENDER_HPP
