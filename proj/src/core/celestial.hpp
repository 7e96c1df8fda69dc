// Copyright 2026 The goodrot authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/drift.hpp"
#include "core/grid.hpp"

namespace goodrot {

using Vec3 = std::array<double, 3>;

/// Position and velocity in the uniformly rotating frame (rotation about Z).
struct OrbitState {
  Vec3 position{};
  Vec3 velocity{};
};

/// Perturbed two-body problem in a rotating frame. The frame rate is
/// derived from the rotation constants: omega = theta / tau, never the
/// other way around.
struct ProblemSpec {
  double mu = 1.0;
  double tau = 0.1;
  /// Oblateness-style axisymmetric perturbation
  /// U = -(J mu / 2 r^3) (3 (Z/r)^2 - 1); J = 0 disables it.
  double j_oblateness = 0.0;
  /// Rotation over one step: exact grid constants or a rounded raw angle.
  std::optional<GridPoint> rotation_point;
  double raw_theta = 0.0;  // used when rotation_point is empty

  double theta() const;
  double omega() const { return theta() / tau; }
};

/// Keplerian flow of the fixed-frame two-body problem over time dt,
/// propagated with the universal-variable f and g functions.
/// Newton iteration to 1e-15 relative, at most 50 iterations.
OrbitState kepler_drift(const OrbitState& state, double mu, double dt);

/// Applies the exact-dyadic rotation to the XY components of position and
/// velocity (Z untouched). `reverse` applies the conjugate pair (c, -s).
OrbitState rotate_state(const OrbitState& state, const GridPoint& g,
                        bool reverse = false);

/// One kick-drift-kick step: perturbation kick tau/2, Kepler drift tau
/// followed by the frame rotation, perturbation kick tau/2.
OrbitState si2_step(const OrbitState& state, const ProblemSpec& spec);

/// Reverse step undoing si2_step up to roundoff (negative drift time and
/// conjugate rotation).
OrbitState si2_step_back(const OrbitState& state, const ProblemSpec& spec);

/// Full rotating-frame Hamiltonian v^2/2 - mu/r - omega Lz + U_pert.
double hamiltonian(const OrbitState& state, const ProblemSpec& spec);

/// (H - H0) / |H0| for a given reference energy.
double energy_error(const OrbitState& state, const ProblemSpec& spec,
                    double h0);

/// Near-circular test orbit: semi-major axis a, eccentricity e (start at
/// perihelion), inclination inc about the X axis.
OrbitState make_orbit(double a, double e, double inc, double mu);

struct EnergyBlock {
  uint64_t index;
  double mean_abs_err;  // mean of |Delta E / E0| over the block
};

struct EnergyRecord {
  double h0;
  std::vector<EnergyBlock> blocks;
  /// Ordinary least-squares slope of block means against the block's
  /// center step.
  double fitted_slope;
};

/// Runs `steps` SI2 steps, block-averaging |Delta E / E0| every
/// `block_size` steps.
EnergyRecord run_energy_record(OrbitState state, const ProblemSpec& spec,
                               uint64_t steps, uint64_t block_size);

}  // namespace goodrot
