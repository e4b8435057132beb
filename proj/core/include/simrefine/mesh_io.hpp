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

#ifndef SIMREFINE_MESH_IO_HPP
#define SIMREFINE_MESH_IO_HPP

#include <filesystem>

#include "simrefine/clothsim.hpp"

namespace simrefine {

// Binary mesh-sequence file, all fields little-endian:
//   char[8]  magic "SRMESH01"
//   uint32   frame count F
//   uint32   vertex count V
//   uint32   triangle count T
//   float64  dt (s)
//   uint32   T x 3 vertex indices
//   float32  F x V x 3 positions (m), frame-major
// Velocities are not stored.
void WriteMeshSequence(const MeshSequence& seq, const std::filesystem::path& path);
MeshSequence ReadMeshSequence(const std::filesystem::path& path);

// One Wavefront OBJ per frame: <dir>/frame_0000.obj, ...
void WriteObjFrames(const MeshSequence& seq, const std::filesystem::path& dir);

}  // namespace simrefine

#endif  // SIMREFINE_MESH_IO_HPP
