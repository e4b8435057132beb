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

#include "simrefine/render.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

#include "simrefine/error.hpp"

namespace simrefine {

namespace {

constexpr double kNearPlane = 1e-3;

struct View {
  Vec3 origin;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
  double focal;  // pixels
  double cx;
  double cy;
};

View MakeView(const Camera& cam) {
  View v;
  v.origin = cam.position;
  v.forward = (cam.look_at - cam.position).normalized();
  Vec3 world_up(0.0, 0.0, 1.0);
  if (std::abs(v.forward.dot(world_up)) > 1.0 - 1e-9) world_up = Vec3(0.0, 1.0, 0.0);
  v.right = v.forward.cross(world_up).normalized();
  v.up = v.right.cross(v.forward);
  v.focal = 0.5 * cam.height / std::tan(0.5 * cam.vertical_fov);
  v.cx = 0.5 * cam.width;
  v.cy = 0.5 * cam.height;
  return v;
}

struct Projected {
  double x;
  double y;
  double inv_depth;
  bool visible;
};

Projected Project(const View& v, const Vec3& p) {
  const Vec3 d = p - v.origin;
  const double z = d.dot(v.forward);
  if (z < kNearPlane) return {0.0, 0.0, 0.0, false};
  return {v.cx + v.focal * d.dot(v.right) / z, v.cy - v.focal * d.dot(v.up) / z, 1.0 / z,
          true};
}

double EdgeFn(const Projected& a, const Projected& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

void Camera::Validate() const {
  if (position == look_at) throw ConfigError("camera position equals look_at");
  if (height < 32 || width < 32) throw ConfigError("image size must be at least 32x32");
  if (!(vertical_fov > 0.0 && vertical_fov < 3.1)) {
    throw ConfigError("vertical field of view must be in (0, pi)");
  }
}

Camera DefaultCamera() { return Camera{}; }

Vec3 DefaultLightDirection() { return Vec3(-0.6, -0.5, 0.62).normalized(); }

Camera OrbitCamera(const Camera& cam, double yaw) {
  Camera out = cam;
  const Eigen::AngleAxisd rot(yaw, Vec3::UnitZ());
  out.position = cam.look_at + rot * (cam.position - cam.look_at);
  return out;
}

Image RenderFrame(const VectorField& positions,
                  const std::vector<std::array<int, 3>>& triangles, const Camera& cam,
                  const Vec3& light_dir) {
  cam.Validate();
  const View view = MakeView(cam);
  const Vec3 light = light_dir.normalized();

  Image img;
  img.height = cam.height;
  img.width = cam.width;
  img.pixels.assign(static_cast<std::size_t>(cam.height) * cam.width, kBackgroundShade);
  std::vector<double> depth(img.pixels.size(), 0.0);  // stores 1/z, 0 = empty

  std::vector<Projected> proj(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) proj[i] = Project(view, positions[i]);

  for (const auto& tri : triangles) {
    const Projected& a = proj[tri[0]];
    const Projected& b = proj[tri[1]];
    const Projected& c = proj[tri[2]];
    if (!a.visible || !b.visible || !c.visible) continue;
    const double area = EdgeFn(a, b, c.x, c.y);
    if (area == 0.0) continue;

    const Vec3 normal =
        (positions[tri[1]] - positions[tri[0]]).cross(positions[tri[2]] - positions[tri[0]]);
    const double nlen = normal.norm();
    if (nlen == 0.0) continue;
    const double shade = std::clamp(std::abs(normal.dot(light)) / nlen, kMinShade, 1.0);

    // clamp in floating point first; near-plane vertices project far away
    auto clamp_to = [](double v, int hi) {
      return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(hi)));
    };
    const int x0 = clamp_to(std::floor(std::min({a.x, b.x, c.x})), cam.width - 1);
    const int x1 = clamp_to(std::ceil(std::max({a.x, b.x, c.x})), cam.width - 1);
    const int y0 = clamp_to(std::floor(std::min({a.y, b.y, c.y})), cam.height - 1);
    const int y1 = clamp_to(std::ceil(std::max({a.y, b.y, c.y})), cam.height - 1);
    if (std::max({a.x, b.x, c.x}) < 0.0 || std::min({a.x, b.x, c.x}) > cam.width ||
        std::max({a.y, b.y, c.y}) < 0.0 || std::min({a.y, b.y, c.y}) > cam.height) {
      continue;
    }
    const double inv_area = 1.0 / area;

    for (int y = y0; y <= y1; ++y) {
      const double py = y + 0.5;
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5;
        const double wa = EdgeFn(b, c, px, py) * inv_area;
        const double wb = EdgeFn(c, a, px, py) * inv_area;
        const double wc = EdgeFn(a, b, px, py) * inv_area;
        if (wa < 0.0 || wb < 0.0 || wc < 0.0) continue;
        const double inv_z = wa * a.inv_depth + wb * b.inv_depth + wc * c.inv_depth;
        const std::size_t idx = static_cast<std::size_t>(y) * cam.width + x;
        if (inv_z > depth[idx]) {
          depth[idx] = inv_z;
          img.pixels[idx] = shade;
        }
      }
    }
  }
  return img;
}

Image RenderFrame(const ClothMesh& mesh, const Camera& cam, const Vec3& light_dir) {
  return RenderFrame(mesh.positions, mesh.triangles, cam, light_dir);
}

VideoVolume RenderSequence(const MeshSequence& seq, const Camera& cam, const Vec3& light_dir,
                           int first, int count) {
  const int total = static_cast<int>(seq.frames.size());
  if (total == 0) throw DomainError("cannot render an empty mesh sequence");
  if (first < 0 || first >= total) throw DomainError("first frame out of range");
  if (count < 0) count = total - first;
  if (count == 0 || first + count > total) throw DomainError("frame range out of bounds");
  if (!(seq.dt > 0.0)) throw DomainError("mesh sequence has non-positive dt");

  VideoVolume video;
  video.fps = 1.0 / seq.dt;
  video.frames = Volume(count, cam.height, cam.width);
  for (int t = 0; t < count; ++t) {
    const Image img = RenderFrame(seq.frames[first + t].positions, seq.triangles, cam, light_dir);
    std::copy(img.pixels.begin(), img.pixels.end(), video.frames.frame(t).begin());
  }
  return video;
}

void QuantizeTo8Bit(Volume& volume) {
  for (double& v : volume.data()) v = std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
}

}  // namespace simrefine
