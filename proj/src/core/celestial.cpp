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

#include "core/celestial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace goodrot {

namespace {

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Stumpff functions c2, c3 with series fallback near zero.
void stumpff(double psi, double& c2, double& c3) {
  if (psi > 1e-6) {
    const double sq = std::sqrt(psi);
    c2 = (1.0 - std::cos(sq)) / psi;
    c3 = (sq - std::sin(sq)) / (psi * sq);
  } else if (psi < -1e-6) {
    const double sq = std::sqrt(-psi);
    c2 = (std::cosh(sq) - 1.0) / (-psi);
    c3 = (std::sinh(sq) - sq) / (-psi * sq);
  } else {
    c2 = 1.0 / 2.0 - psi / 24.0 + psi * psi / 720.0;
    c3 = 1.0 / 6.0 - psi / 120.0 + psi * psi / 5040.0;
  }
}

constexpr double kCollisionRadius = 1e-12;

}  // namespace

double ProblemSpec::theta() const {
  if (rotation_point) return theta_of(*rotation_point);
  return raw_theta;
}

OrbitState kepler_drift(const OrbitState& state, double mu, double dt) {
  if (dt == 0.0) return state;
  const double r0 = norm(state.position);
  if (r0 < kCollisionRadius)
    throw std::domain_error("kepler_drift: collision radius reached");
  const double v2 = dot(state.velocity, state.velocity);
  const double rdotv = dot(state.position, state.velocity);
  const double sqmu = std::sqrt(mu);
  const double alpha = 2.0 / r0 - v2 / mu;  // 1/a

  // Initial guess: mean-motion estimate for elliptic states, asymptotic
  // log form for hyperbolic ones, Barker-like fallback near parabolic.
  double chi;
  if (alpha > 1e-6) {
    chi = sqmu * alpha * dt;
  } else if (alpha < -1e-6) {
    const double sgn = dt >= 0.0 ? 1.0 : -1.0;
    const double sa = std::sqrt(-1.0 / alpha);
    const double num = -2.0 * mu * alpha * dt;
    const double den = rdotv + sgn * std::sqrt(-mu / alpha) * (1.0 - r0 * alpha);
    chi = sgn * sa * std::log(std::fabs(num / den));
  } else {
    chi = sqmu * dt / r0;
  }
  double c2 = 0.0, c3 = 0.0, psi = 0.0;
  bool converged = false;
  int used = 0;
  for (int it = 0; it < 50; ++it) {
    psi = chi * chi * alpha;
    stumpff(psi, c2, c3);
    const double r_val = chi * chi * c2 + (rdotv / sqmu) * chi * (1.0 - psi * c3) +
                         r0 * (1.0 - psi * c2);
    const double f_val = (rdotv / sqmu) * chi * chi * c2 +
                         (1.0 - alpha * r0) * chi * chi * chi * c3 + r0 * chi -
                         sqmu * dt;
    const double dchi = f_val / r_val;
    chi -= dchi;
    ++used;
    if (std::fabs(dchi) <= 1e-15 * std::fmax(1.0, std::fabs(chi))) {
      converged = true;
      psi = chi * chi * alpha;
      stumpff(psi, c2, c3);
      break;
    }
  }
  if (!converged)
    throw std::runtime_error(
        "kepler_drift: universal Kepler equation did not converge after " +
        std::to_string(used) + " iterations");

  const double f = 1.0 - chi * chi * c2 / r0;
  const double g = dt - chi * chi * chi * c3 / sqmu;
  OrbitState out;
  for (int i = 0; i < 3; ++i)
    out.position[i] = f * state.position[i] + g * state.velocity[i];
  const double rn = norm(out.position);
  if (rn < kCollisionRadius)
    throw std::domain_error("kepler_drift: collision radius reached");
  const double gdot = 1.0 - chi * chi * c2 / rn;
  const double fdot = sqmu * chi * (psi * c3 - 1.0) / (rn * r0);
  for (int i = 0; i < 3; ++i)
    out.velocity[i] = fdot * state.position[i] + gdot * state.velocity[i];
  return out;
}

OrbitState rotate_state(const OrbitState& state, const GridPoint& g,
                        bool reverse) {
  const auto [c, s_pos] = to_sin_cos(g);
  const double s = reverse ? -s_pos : s_pos;
  // Frame rotation by -theta: the Lz part of the drift Hamiltonian moves
  // coordinates clockwise for positive omega.
  OrbitState out = state;
  out.position[0] = c * state.position[0] + s * state.position[1];
  out.position[1] = -s * state.position[0] + c * state.position[1];
  out.velocity[0] = c * state.velocity[0] + s * state.velocity[1];
  out.velocity[1] = -s * state.velocity[0] + c * state.velocity[1];
  return out;
}

namespace {

// Gradient of U = -(J mu / 2) (3 Z^2 - r^2) / r^5.
Vec3 grad_perturbation(const Vec3& r, double mu, double j) {
  const double r2 = dot(r, r);
  const double rr = std::sqrt(r2);
  const double r5 = r2 * r2 * rr;
  const double r7 = r5 * r2;
  const double z2 = r[2] * r[2];
  const double cxy = (j * mu / 2.0) * (15.0 * z2 / r7 - 3.0 / r5);
  return {cxy * r[0], cxy * r[1],
          (j * mu / 2.0) * (15.0 * z2 * r[2] / r7 - 9.0 * r[2] / r5)};
}

double perturbation(const Vec3& r, double mu, double j) {
  if (j == 0.0) return 0.0;
  const double r2 = dot(r, r);
  const double rr = std::sqrt(r2);
  return -(j * mu / (2.0 * r2 * rr)) * (3.0 * r[2] * r[2] / r2 - 1.0);
}

void kick(OrbitState& state, const ProblemSpec& spec, double dt) {
  if (spec.j_oblateness == 0.0) return;
  const Vec3 g = grad_perturbation(state.position, spec.mu, spec.j_oblateness);
  for (int i = 0; i < 3; ++i) state.velocity[i] -= g[i] * dt;
}

// Rounded constants for a raw angle, applied the same way as a grid
// rotation.
void rotate_raw(OrbitState& state, double c, double s) {
  const double px = c * state.position[0] + s * state.position[1];
  const double py = -s * state.position[0] + c * state.position[1];
  const double vx = c * state.velocity[0] + s * state.velocity[1];
  const double vy = -s * state.velocity[0] + c * state.velocity[1];
  state.position[0] = px;
  state.position[1] = py;
  state.velocity[0] = vx;
  state.velocity[1] = vy;
}

}  // namespace

OrbitState si2_step(const OrbitState& state, const ProblemSpec& spec) {
  OrbitState s = state;
  kick(s, spec, spec.tau / 2.0);
  s = kepler_drift(s, spec.mu, spec.tau);
  if (spec.rotation_point) {
    s = rotate_state(s, *spec.rotation_point);
  } else {
    rotate_raw(s, std::cos(spec.raw_theta), std::sin(spec.raw_theta));
  }
  kick(s, spec, spec.tau / 2.0);
  return s;
}

OrbitState si2_step_back(const OrbitState& state, const ProblemSpec& spec) {
  OrbitState s = state;
  kick(s, spec, -spec.tau / 2.0);
  if (spec.rotation_point) {
    s = rotate_state(s, *spec.rotation_point, /*reverse=*/true);
  } else {
    rotate_raw(s, std::cos(spec.raw_theta), -std::sin(spec.raw_theta));
  }
  s = kepler_drift(s, spec.mu, -spec.tau);
  kick(s, spec, -spec.tau / 2.0);
  return s;
}

double hamiltonian(const OrbitState& state, const ProblemSpec& spec) {
  const double v2 = dot(state.velocity, state.velocity);
  const double r = norm(state.position);
  const double lz = state.position[0] * state.velocity[1] -
                    state.position[1] * state.velocity[0];
  return 0.5 * v2 - spec.mu / r - spec.omega() * lz +
         perturbation(state.position, spec.mu, spec.j_oblateness);
}

double energy_error(const OrbitState& state, const ProblemSpec& spec,
                    double h0) {
  return (hamiltonian(state, spec) - h0) / std::fabs(h0);
}

OrbitState make_orbit(double a, double e, double inc, double mu) {
  if (a <= 0.0 || e < 0.0 || e >= 1.0)
    throw std::invalid_argument("make_orbit: need a > 0 and 0 <= e < 1");
  const double rp = a * (1.0 - e);
  const double vp = std::sqrt(mu * (1.0 + e) / (a * (1.0 - e)));
  OrbitState s;
  s.position = {rp, 0.0, 0.0};
  s.velocity = {0.0, vp * std::cos(inc), vp * std::sin(inc)};
  return s;
}

EnergyRecord run_energy_record(OrbitState state, const ProblemSpec& spec,
                               uint64_t steps, uint64_t block_size) {
  if (block_size < 1 || steps < block_size)
    throw std::invalid_argument("run_energy_record: need steps >= block_size >= 1");
  EnergyRecord record;
  record.h0 = hamiltonian(state, spec);
  double acc = 0.0;
  uint64_t in_block = 0, index = 0;
  std::vector<double> xs, ys;
  for (uint64_t t = 1; t <= steps; ++t) {
    state = si2_step(state, spec);
    acc += std::fabs(energy_error(state, spec, record.h0));
    if (++in_block == block_size) {
      const double mean = acc / static_cast<double>(block_size);
      record.blocks.push_back(EnergyBlock{index, mean});
      xs.push_back(static_cast<double>(t) - static_cast<double>(block_size) / 2.0);
      ys.push_back(mean);
      acc = 0.0;
      in_block = 0;
      ++index;
    }
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  record.fitted_slope = den > 0.0 ? num / den : 0.0;
  return record;
}

}  // namespace goodrot
