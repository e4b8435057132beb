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

#ifndef SIMREFINE_VIDEO_IO_HPP
#define SIMREFINE_VIDEO_IO_HPP

#include <filesystem>
#include <span>
#include <string>

#include "simrefine/volume.hpp"

namespace simrefine {

// PGM-sequence directory layout:
//   <dir>/frame_0000.pgm ... frame_<N-1>.pgm   8-bit binary PGM (P5)
//   <dir>/video.meta                           one line: "fps=<fps> count=<N>"
inline constexpr const char* kVideoMetaFile = "video.meta";

std::string PgmFrameName(int index);

void WritePgmSequence(const VideoVolume& video, const std::filesystem::path& dir);
// Throws IngestionError naming every missing or unreadable frame.
VideoVolume ReadPgmSequence(const std::filesystem::path& dir);

// Raw volume file, little-endian:
//   char[8] magic "SRVOL001", uint32 frames, uint32 height, uint32 width,
//   float64 fps, then frames*height*width uint8 pixels (value = round(255 v)).
void WriteRawVolume(const VideoVolume& video, const std::filesystem::path& path);
VideoVolume ReadRawVolume(const std::filesystem::path& path);

// Single 8-bit PGM; values are clamped to [0, 1].
void WritePgm(const std::filesystem::path& path, int height, int width,
              std::span<const double> values);
struct PgmImage {
  int height = 0;
  int width = 0;
  std::vector<double> pixels;  // in [0, 1]
};
PgmImage ReadPgm(const std::filesystem::path& path);

}  // namespace simrefine

#endif  // SIMREFINE_VIDEO_IO_HPP
