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

#include "simrefine/clothsim.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "simrefine/error.hpp"

namespace simrefine {

namespace {

double SnapUnit(double c) { return std::abs(c) < 1e-15 ? 0.0 : c; }

BendDirection HingeDirection(int nx, int a, int b) {
  const int ia = a % nx, ja = a / nx;
  const int ib = b % nx, jb = b / nx;
  if (ja == jb) return BendDirection::kWarp;  // runs along the width
  if (ia == ib) return BendDirection::kWeft;  // runs along the height
  return BendDirection::kBias;
}

void AddBending(const ClothMesh& mesh, const ParameterVector& p, VectorField& f) {
  const auto& x = mesh.positions;
  for (const auto& h : mesh.hinges) {
    const Vec3& x1 = x[h.wing0];
    const Vec3& x2 = x[h.wing1];
    const Vec3& x3 = x[h.v0];
    const Vec3& x4 = x[h.v1];

    const Vec3 e = x4 - x3;
    const double e_len = e.norm();
    const Vec3 n1 = (x1 - x3).cross(x1 - x4);
    const Vec3 n2 = (x2 - x4).cross(x2 - x3);
    const double n1_len = n1.norm();
    const double n2_len = n2.norm();
    const double tol = 1e-12 * e_len * e_len;
    if (!(n1_len > tol) || !(e_len > 0.0)) {
      throw DegenerateTriangleError(h.tri0, "degenerate triangle " + std::to_string(h.tri0) +
                                                " (zero area) in bending hinge");
    }
    if (!(n2_len > tol)) {
      throw DegenerateTriangleError(h.tri1, "degenerate triangle " + std::to_string(h.tri1) +
                                                " (zero area) in bending hinge");
    }

    const Vec3 u1n = n1 / n1_len;
    const Vec3 u2n = n2 / n2_len;
    const double cos_phi = u1n.dot(u2n);
    const double sin_phi = u1n.cross(u2n).dot(e) / e_len;
    const double phi = std::atan2(sin_phi, cos_phi);
    const double sin_half = std::sin(0.5 * phi);
    if (sin_half == 0.0) continue;

    const double area_sum = n1_len + n2_len;
    const double alpha = std::abs(sin_half) / area_sum;
    const double k = BendingStiffness(p, h.direction, alpha);
    const double coef = k * sin_half * e_len * e_len / area_sum;

    const Vec3 w1 = n1 / (n1_len * n1_len);
    const Vec3 w2 = n2 / (n2_len * n2_len);
    const Vec3 mode1 = e_len * w1;
    const Vec3 mode2 = e_len * w2;
    const Vec3 mode3 = ((x1 - x4).dot(e) / e_len) * w1 + ((x2 - x4).dot(e) / e_len) * w2;
    const Vec3 mode4 = -((x1 - x3).dot(e) / e_len) * w1 - ((x2 - x3).dot(e) / e_len) * w2;

    f[h.wing0] += coef * mode1;
    f[h.wing1] += coef * mode2;
    f[h.v0] += coef * mode3;
    f[h.v1] += coef * mode4;
  }
}

void AddStretch(const ClothMesh& mesh, VectorField& f) {
  const auto& x = mesh.positions;
  const double ks = mesh.stretch_stiffness;
  for (const auto& e : mesh.edges) {
    const Vec3 d = x[e.b] - x[e.a];
    const double len = d.norm();
    if (len == 0.0) continue;
    const Vec3 force = (ks * (len - e.rest_length) / len) * d;
    f[e.a] += force;
    f[e.b] -= force;
  }
}

void AddEdgeDamping(const ClothMesh& mesh, VectorField& f) {
  const double kd = mesh.stretch_damping;
  if (kd == 0.0) return;
  const auto& x = mesh.positions;
  const auto& v = mesh.velocities;
  for (const auto& e : mesh.edges) {
    const Vec3 d = x[e.b] - x[e.a];
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) continue;
    const Vec3 force = (kd * (v[e.b] - v[e.a]).dot(d) / len2) * d;
    f[e.a] += force;
    f[e.b] -= force;
  }
}

void AddExternal(const ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg,
                 VectorField& f) {
  const double drag = DragCoefficient(cfg);
  const Vec3 wind = p.wind_speed * cfg.wind_direction;
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    f[i] += mesh.vertex_mass[i] * cfg.gravity;
    f[i] += drag * (wind - mesh.velocities[i]);
  }
}

void AccumulateForces(const ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg,
                      VectorField& f) {
  f.assign(mesh.positions.size(), Vec3::Zero());
  AddStretch(mesh, f);
  AddEdgeDamping(mesh, f);
  AddBending(mesh, p, f);
  AddExternal(mesh, p, cfg, f);
}

void Integrate(ClothMesh& mesh, const VectorField& f, const SimConfig& cfg, double dt,
               long step_index) {
  const double damp = 1.0 / (1.0 + cfg.damping * dt);
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    Vec3& v = mesh.velocities[i];
    if (mesh.is_pinned[i]) {
      v.setZero();
      continue;
    }
    v = (v + (dt / mesh.vertex_mass[i]) * f[i]) * damp;
    mesh.positions[i] += dt * v;
    if (!mesh.positions[i].allFinite() || !v.allFinite()) {
      throw InstabilityError(step_index, "simulation became non-finite at vertex " +
                                             std::to_string(i) + ", step " +
                                             std::to_string(step_index));
    }
  }
}

}  // namespace

ClothMesh BuildFlagMesh(const SimConfig& cfg, const ParameterVector& p) {
  if (cfg.grid_nx < 2 || cfg.grid_ny < 2) {
    throw ConfigError("flag grid needs at least 2x2 vertices");
  }
  if (!(cfg.flag_width > 0.0) || !(cfg.flag_height > 0.0)) {
    throw ConfigError("flag width and height must be positive");
  }
  if (!(p.area_weight > 0.0)) throw ConfigError("area weight must be positive");

  const int nx = cfg.grid_nx;
  const int ny = cfg.grid_ny;
  ClothMesh mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.stretch_stiffness = cfg.stretch_stiffness;
  mesh.stretch_damping = cfg.stretch_damping;

  const Vec3 along(SnapUnit(std::cos(cfg.initial_yaw)), SnapUnit(std::sin(cfg.initial_yaw)),
                   0.0);
  const int n = nx * ny;
  mesh.positions.resize(n);
  mesh.velocities.assign(n, Vec3::Zero());
  for (int j = 0; j < ny; ++j) {
    const double z = cfg.flag_height * (1.0 - static_cast<double>(j) / (ny - 1));
    for (int i = 0; i < nx; ++i) {
      const double s = cfg.flag_width * static_cast<double>(i) / (nx - 1);
      mesh.positions[j * nx + i] = s * along + Vec3(0.0, 0.0, z);
    }
  }

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const int v00 = j * nx + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + nx;
      const int v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  // Undirected edge -> (first triangle, oriented endpoints, wing), second.
  struct Side {
    int tri;
    int from;
    int to;
    int wing;
  };
  std::map<std::pair<int, int>, std::vector<Side>> sides;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      const int c = tri[(k + 2) % 3];
      sides[{std::min(a, b), std::max(a, b)}].push_back({t, a, b, c});
    }
  }
  for (const auto& [key, list] : sides) {
    const double rest = (mesh.positions[key.second] - mesh.positions[key.first]).norm();
    mesh.edges.push_back({key.first, key.second, rest});
    if (list.size() == 2) {
      Hinge h;
      h.tri0 = list[0].tri;
      h.tri1 = list[1].tri;
      h.v0 = list[0].from;
      h.v1 = list[0].to;
      h.wing0 = list[0].wing;
      h.wing1 = list[1].wing;
      h.direction = HingeDirection(nx, key.first, key.second);
      mesh.hinges.push_back(h);
    } else if (list.size() > 2) {
      throw ConfigError("non-manifold edge in flag mesh");
    }
  }

  mesh.vertex_mass.assign(n, 0.0);
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.positions[tri[0]];
    const Vec3& b = mesh.positions[tri[1]];
    const Vec3& c = mesh.positions[tri[2]];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    const double share = p.area_weight * area / 3.0;
    for (int v : tri) mesh.vertex_mass[v] += share;
  }

  mesh.is_pinned.assign(n, 0);
  for (int j = 0; j < ny; ++j) {
    mesh.pinned.push_back(j * nx);
    mesh.is_pinned[j * nx] = 1;
  }
  return mesh;
}

double BendingStiffness(const ParameterVector& p, BendDirection dir, double alpha) {
  constexpr double kSpacing = 1.0 / (kSamplesPerDirection - 1);
  if (alpha <= 0.0) return p.Bending(dir, 0);
  if (alpha >= 1.0) return p.Bending(dir, kSamplesPerDirection - 1);
  const double pos = alpha / kSpacing;
  const int lo = std::min(static_cast<int>(pos), kSamplesPerDirection - 2);
  const double t = pos - lo;
  return (1.0 - t) * p.Bending(dir, lo) + t * p.Bending(dir, lo + 1);
}

VectorField BendingForce(const ClothMesh& mesh, const ParameterVector& p) {
  VectorField f(mesh.positions.size(), Vec3::Zero());
  AddBending(mesh, p, f);
  return f;
}

VectorField StretchForce(const ClothMesh& mesh) {
  VectorField f(mesh.positions.size(), Vec3::Zero());
  AddStretch(mesh, f);
  return f;
}

VectorField EdgeDampingForce(const ClothMesh& mesh) {
  VectorField f(mesh.positions.size(), Vec3::Zero());
  AddEdgeDamping(mesh, f);
  return f;
}

VectorField ExternalForces(const ClothMesh& mesh, const ParameterVector& p,
                           const SimConfig& cfg) {
  VectorField f(mesh.positions.size(), Vec3::Zero());
  AddExternal(mesh, p, cfg, f);
  return f;
}

double DragCoefficient(const SimConfig& cfg) {
  return 6.0 * std::numbers::pi * cfg.drag_radius * cfg.air_viscosity;
}

double StableTimestep(const ClothMesh& mesh, const SimConfig& cfg) {
  // Gershgorin bounds on the mass-scaled stiffness and damping matrices.
  const int n = mesh.vertex_count();
  std::vector<double> stiff(n, 0.0);
  std::vector<double> damp(n, 0.0);
  const auto& m = mesh.vertex_mass;
  for (const auto& e : mesh.edges) {
    const double cross = 1.0 / std::sqrt(m[e.a] * m[e.b]);
    stiff[e.a] += mesh.stretch_stiffness * (1.0 / m[e.a] + cross);
    stiff[e.b] += mesh.stretch_stiffness * (1.0 / m[e.b] + cross);
    damp[e.a] += mesh.stretch_damping * (1.0 / m[e.a] + cross);
    damp[e.b] += mesh.stretch_damping * (1.0 / m[e.b] + cross);
  }
  const auto& x = mesh.positions;
  for (const auto& h : mesh.hinges) {
    const Vec3 e = x[h.v1] - x[h.v0];
    const double e_len = e.norm();
    const Vec3 n1 = (x[h.wing0] - x[h.v0]).cross(x[h.wing0] - x[h.v1]);
    const Vec3 n2 = (x[h.wing1] - x[h.v1]).cross(x[h.wing1] - x[h.v0]);
    const double l1 = n1.norm(), l2 = n2.norm();
    if (l1 == 0.0 || l2 == 0.0) continue;
    const Vec3 w1 = n1 / (l1 * l1), w2 = n2 / (l2 * l2);
    const std::array<int, 4> ids{h.wing0, h.wing1, h.v0, h.v1};
    const std::array<double, 4> mode{
        (e_len * w1).norm(), (e_len * w2).norm(),
        (((x[h.wing0] - x[h.v1]).dot(e) / e_len) * w1 +
         ((x[h.wing1] - x[h.v1]).dot(e) / e_len) * w2).norm(),
        (((x[h.wing0] - x[h.v0]).dot(e) / e_len) * w1 +
         ((x[h.wing1] - x[h.v0]).dot(e) / e_len) * w2).norm()};
    const double k = cfg.stability_bending * e_len / (2.0 * (l1 + l2));
    for (int a = 0; a < 4; ++a) {
      double row = 0.0;
      for (int b = 0; b < 4; ++b) row += mode[b] / std::sqrt(m[ids[a]] * m[ids[b]]);
      stiff[ids[a]] += k * mode[a] * row;
    }
  }
  const double drag = DragCoefficient(cfg);
  double omega2 = 0.0;
  double gamma = 0.0;
  for (int i = 0; i < n; ++i) {
    if (mesh.is_pinned[i]) continue;
    omega2 = std::max(omega2, stiff[i]);
    gamma = std::max(gamma, damp[i] + drag / m[i]);
  }
  double h = std::numeric_limits<double>::infinity();
  if (omega2 > 0.0) h = std::min(h, 2.0 / std::sqrt(omega2));
  if (gamma > 0.0) h = std::min(h, 2.0 / gamma);
  return h / cfg.stability_safety;
}

namespace {

int RequiredSubsteps(const SimConfig& cfg, const ParameterVector& p) {
  ParameterVector stiffest = p;
  stiffest.area_weight = std::min(p.area_weight, cfg.stability_area_weight);
  for (auto& k : stiffest.bending) k = std::max(k, cfg.stability_bending);
  SimConfig probe = cfg;
  probe.stability_bending =
      *std::max_element(stiffest.bending.begin(), stiffest.bending.end());
  const ClothMesh mesh = BuildFlagMesh(probe, stiffest);
  const double h = StableTimestep(mesh, probe);
  return std::max(1, static_cast<int>(std::ceil(cfg.dt_output / h)));
}

int SubstepsFor(const SimConfig& cfg, const ParameterVector& p) {
  if (!(cfg.dt_output > 0.0)) throw ConfigError("dt_output must be positive");
  if (cfg.n_frames < 1) throw ConfigError("n_frames must be at least 1");
  if (!(cfg.damping >= 0.0)) throw ConfigError("damping must be non-negative");
  if (!(cfg.drag_radius >= 0.0) || !(cfg.air_viscosity >= 0.0)) {
    throw ConfigError("drag radius and air viscosity must be non-negative");
  }
  if (!(cfg.stretch_stiffness >= 0.0) || !(cfg.stretch_damping >= 0.0)) {
    throw ConfigError("stretch stiffness and damping must be non-negative");
  }
  if (!cfg.gravity.allFinite() || !cfg.wind_direction.allFinite()) {
    throw ConfigError("gravity and wind direction must be finite");
  }
  if (!(cfg.stability_safety > 0.0)) throw ConfigError("stability_safety must be positive");
  const int required = RequiredSubsteps(cfg, p);
  if (cfg.substeps > 0) {
    if (cfg.substeps < required) {
      throw ConfigError("substeps = " + std::to_string(cfg.substeps) +
                        " is unstable for the stiffest admissible material; need >= " +
                        std::to_string(required));
    }
    return cfg.substeps;
  }
  return required;
}

}  // namespace

int ResolveSubsteps(const SimConfig& cfg) {
  ParameterVector probe;
  probe.bending.fill(cfg.stability_bending);
  probe.area_weight = cfg.stability_area_weight;
  return SubstepsFor(cfg, probe);
}

void StepInPlace(ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg, double dt,
                 long step_index) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  VectorField f;
  AccumulateForces(mesh, p, cfg, f);
  Integrate(mesh, f, cfg, dt, step_index);
}

ClothMesh Step(const ClothMesh& mesh, const ParameterVector& p, const SimConfig& cfg,
               double dt, long step_index) {
  ClothMesh next = mesh;
  StepInPlace(next, p, cfg, dt, step_index);
  return next;
}

MeshSequence Simulate(const ParameterVector& p, const SimConfig& cfg) {
  const int substeps = SubstepsFor(cfg, p);
  ClothMesh mesh = BuildFlagMesh(cfg, p);
  const double h = cfg.dt_output / substeps;

  MeshSequence seq;
  seq.dt = cfg.dt_output;
  seq.triangles = mesh.triangles;
  seq.frames.reserve(cfg.n_frames);

  VectorField f;
  long step = 0;
  for (int frame = 0; frame < cfg.n_frames; ++frame) {
    for (int s = 0; s < substeps; ++s, ++step) {
      AccumulateForces(mesh, p, cfg, f);
      Integrate(mesh, f, cfg, h, step);
    }
    seq.frames.push_back({mesh.positions, mesh.velocities});
  }
  return seq;
}

double KineticEnergy(const ClothMesh& mesh) {
  double e = 0.0;
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    e += 0.5 * mesh.vertex_mass[i] * mesh.velocities[i].squaredNorm();
  }
  return e;
}

double KineticEnergy(const MeshFrame& frame, const std::vector<double>& vertex_mass) {
  double e = 0.0;
  for (std::size_t i = 0; i < frame.velocities.size(); ++i) {
    e += 0.5 * vertex_mass[i] * frame.velocities[i].squaredNorm();
  }
  return e;
}

double MechanicalEnergy(const ClothMesh& mesh, const SimConfig& cfg) {
  double e = KineticEnergy(mesh);
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    e -= mesh.vertex_mass[i] * cfg.gravity.dot(mesh.positions[i]);
  }
  for (const auto& edge : mesh.edges) {
    const double stretch =
        (mesh.positions[edge.b] - mesh.positions[edge.a]).norm() - edge.rest_length;
    e += 0.5 * mesh.stretch_stiffness * stretch * stretch;
  }
  return e;
}

}  // namespace simrefine
