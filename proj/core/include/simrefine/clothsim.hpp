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

#ifndef SIMREFINE_CLOTHSIM_HPP
#define SIMREFINE_CLOTHSIM_HPP

#include <Eigen/Core>

#include <array>
#include <numbers>
#include <vector>

#include "simrefine/params.hpp"

namespace simrefine {

using Vec3 = Eigen::Vector3d;
using VectorField = std::vector<Vec3>;

struct SimConfig {
  int grid_nx = 45;  // vertices along the flag width
  int grid_ny = 30;  // vertices along the flag height
  double flag_width = 1.5;   // m
  double flag_height = 1.0;  // m
  double dt_output = 0.04;   // s between recorded frames
  int substeps = 0;          // per output frame; 0 picks the stable minimum
  int n_frames = 60;
  double damping = 2.5;      // mass-proportional velocity damping (1/s)
  Vec3 gravity{0.0, 0.0, -9.81};
  double drag_radius = 0.15;        // Stokes sphere radius R (m)
  double air_viscosity = 1.81e-5;   // eta (Pa*s)
  Vec3 wind_direction{1.0, 0.0, 0.0};
  double stretch_stiffness = 50.0;  // N/m per edge spring
  double stretch_damping = 0.02;    // N*s/m along each edge
  // Horizontal direction (radians from +x) along which the flag extends from
  // the pole at release. The default hangs it across the wind.
  double initial_yaw = 0.5 * std::numbers::pi;
  // Material used by the startup stability check.
  double stability_area_weight = 0.10;
  double stability_bending = 1e-4;
  double stability_safety = 2.0;
};

struct Edge {
  int a = 0;
  int b = 0;
  double rest_length = 0.0;
};

// Two triangles sharing the edge (v0, v1). wing0 belongs to tri0, wing1 to
// tri1; both triangles list (v0, v1) with the same orientation as the mesh.
struct Hinge {
  int v0 = 0;
  int v1 = 0;
  int wing0 = 0;
  int wing1 = 0;
  int tri0 = 0;
  int tri1 = 0;
  BendDirection direction = BendDirection::kWarp;
};

// Rectangular flag. Vertex (column i, row j) has index j * nx + i; column 0 is
// the hoist edge on the pole, row 0 the top edge.
struct ClothMesh {
  int nx = 0;
  int ny = 0;
  VectorField positions;
  VectorField velocities;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Edge> edges;
  std::vector<Hinge> hinges;
  std::vector<double> vertex_mass;
  std::vector<int> pinned;
  std::vector<char> is_pinned;
  double stretch_stiffness = 0.0;
  double stretch_damping = 0.0;

  int vertex_count() const { return static_cast<int>(positions.size()); }
};

struct MeshFrame {
  VectorField positions;
  VectorField velocities;
};

struct MeshSequence {
  std::vector<MeshFrame> frames;
  std::vector<std::array<int, 3>> triangles;
  double dt = 0.0;
};

ClothMesh BuildFlagMesh(const SimConfig& cfg, const ParameterVector& p);

// Piecewise-linear stiffness over the reparametrized angle, samples at
// alpha = 0, 0.25, 0.5, 0.75, 1 with constant extrapolation.
double BendingStiffness(const ParameterVector& p, BendDirection dir, double alpha);

VectorField BendingForce(const ClothMesh& mesh, const ParameterVector& p);
VectorField StretchForce(const ClothMesh& mesh);
VectorField EdgeDampingForce(const ClothMesh& mesh);
VectorField ExternalForces(const ClothMesh& mesh, const ParameterVector& p,
                           const SimConfig& cfg);

// Stokes coefficient 6*pi*R*eta (N*s/m).
double DragCoefficient(const SimConfig& cfg);

// Largest substep for which explicit integration of `mesh` stays stable with
// the configured safety factor.
double StableTimestep(const ClothMesh& mesh, const SimConfig& cfg);
// Substeps per output frame after the startup stability check.
int ResolveSubsteps(const SimConfig& cfg);

// One semi-implicit Euler step. `step_index` is only used in error reports.
ClothMesh Step(const ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg,
               double dt, long step_index = -1);
void StepInPlace(ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg,
                 double dt, long step_index = -1);

MeshSequence Simulate(const ParameterVector& p, const SimConfig& cfg);

double KineticEnergy(const ClothMesh& mesh);
double KineticEnergy(const MeshFrame& frame, const std::vector<double>& vertex_mass);
// Kinetic + gravitational + spring energy (bending excluded).
double MechanicalEnergy(const ClothMesh& mesh, const SimConfig& cfg);

}  // namespace simrefine

#endif  // SIMREFINE_CLOTHSIM_HPP
