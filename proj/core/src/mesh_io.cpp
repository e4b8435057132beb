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

#include "simrefine/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "simrefine/binary_io.hpp"
#include "simrefine/error.hpp"

namespace simrefine {

namespace {

constexpr char kMagic[8] = {'S', 'R', 'M', 'E', 'S', 'H', '0', '1'};

std::string FrameName(int index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04d.%s", index, ext);
  return buf;
}

}  // namespace

void WriteMeshSequence(const MeshSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const auto vertices =
      seq.frames.empty() ? std::uint32_t{0}
                         : static_cast<std::uint32_t>(seq.frames.front().positions.size());
  out.write(kMagic, sizeof(kMagic));
  binary::WriteLE(out, static_cast<std::uint32_t>(seq.frames.size()));
  binary::WriteLE(out, vertices);
  binary::WriteLE(out, static_cast<std::uint32_t>(seq.triangles.size()));
  binary::WriteLE(out, seq.dt);
  for (const auto& tri : seq.triangles) {
    for (int v : tri) binary::WriteLE(out, static_cast<std::uint32_t>(v));
  }
  for (const auto& frame : seq.frames) {
    if (frame.positions.size() != vertices) {
      throw ShapeError("mesh sequence frames have differing vertex counts");
    }
    for (const auto& p : frame.positions) {
      for (int c = 0; c < 3; ++c) binary::WriteLE(out, static_cast<float>(p[c]));
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

MeshSequence ReadMeshSequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open mesh file " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::string(magic, 8) != std::string(kMagic, 8)) {
    throw IngestionError(path.string() + ": not a mesh-sequence file");
  }
  std::uint32_t frames = 0, vertices = 0, triangles = 0;
  MeshSequence seq;
  if (!binary::ReadLE(in, frames) || !binary::ReadLE(in, vertices) ||
      !binary::ReadLE(in, triangles) || !binary::ReadLE(in, seq.dt)) {
    throw IngestionError(path.string() + ": truncated header");
  }
  seq.triangles.resize(triangles);
  for (auto& tri : seq.triangles) {
    for (int& v : tri) {
      std::uint32_t idx;
      if (!binary::ReadLE(in, idx)) throw IngestionError(path.string() + ": truncated");
      if (idx >= vertices) throw IngestionError(path.string() + ": bad vertex index");
      v = static_cast<int>(idx);
    }
  }
  seq.frames.resize(frames);
  for (auto& frame : seq.frames) {
    frame.positions.resize(vertices);
    frame.velocities.assign(vertices, Vec3::Zero());
    for (auto& p : frame.positions) {
      for (int c = 0; c < 3; ++c) {
        float value;
        if (!binary::ReadLE(in, value)) throw IngestionError(path.string() + ": truncated");
        p[c] = value;
      }
    }
  }
  return seq;
}

void WriteObjFrames(const MeshSequence& seq, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto path = dir / FrameName(static_cast<int>(f), "obj");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    char buf[96];
    for (const auto& p : seq.frames[f].positions) {
      std::snprintf(buf, sizeof(buf), "v %.6f %.6f %.6f\n", p.x(), p.y(), p.z());
      out << buf;
    }
    for (const auto& tri : seq.triangles) {
      out << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
  }
}

}  // namespace simrefine
