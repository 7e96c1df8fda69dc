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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace goodrot {

enum class PrecisionMode { single, double_prec };

/// Where the rotation constants come from:
///  - grid_point: exact dyadics c = x 2^-p, s = y 2^-p;
///  - dyadic_angle: theta = j/512 held exactly, c and s rounded from it;
///  - pi_fraction: theta = j pi/2000, c and s rounded from it.
struct RotationSpec {
  enum class Source { grid_point, dyadic_angle, pi_fraction };
  Source source;
  std::optional<GridPoint> point;  // grid_point
  int j = 0;                       // dyadic_angle or pi_fraction
  PrecisionMode mode = PrecisionMode::double_prec;

  static RotationSpec from_grid(const GridPoint& g,
                                PrecisionMode m = PrecisionMode::double_prec);
  static RotationSpec from_dyadic(int j,
                                  PrecisionMode m = PrecisionMode::double_prec);
  static RotationSpec from_pi_fraction(int j,
                                       PrecisionMode m = PrecisionMode::double_prec);
};

/// The realized constants, plus the exact value of c^2 + s^2 - 1 in the
/// working precision (the systematic per-step radius-squared drift).
struct RotationConstants {
  double c;
  double s;
  double unit_defect;  // exact c^2 + s^2 - 1 of the working-precision pair
};

RotationConstants resolve_rotation(const RotationSpec& spec);

struct DriftPoint {
  uint64_t step;
  double mean_abs_err;  // mean over trials of |R^2/R0^2 - 1|
  double std_err;       // sample standard deviation over trials
};

struct DriftSeries {
  RotationConstants constants;
  unsigned trials;
  uint64_t seed;
  std::vector<DriftPoint> checkpoints;
};

/// Geometric checkpoint schedule: powers of 10^(1/4) up to and including
/// `steps`, deduplicated.
std::vector<uint64_t> default_checkpoints(uint64_t steps);

/// Iterates X' = cX - sY, Y' = sX + cY from (x0, y0), recording
/// |R^2/R0^2 - 1| at the given checkpoints (ascending).
std::vector<double> iterate_rotation(const RotationSpec& spec, double x0,
                                     double y0,
                                     const std::vector<uint64_t>& checkpoints);

/// Multi-trial run: `trials` pseudo-random unit-circle starts drawn from
/// `seed`, aggregated as mean/std per checkpoint. Bit-reproducible for a
/// fixed seed regardless of worker count.
DriftSeries run_drift(const RotationSpec& spec, uint64_t steps, unsigned trials,
                      uint64_t seed, unsigned workers = 0);

/// Smallest P <= max_period with state(T + P) == state(T) bit-exactly for
/// some transient T (Brent's algorithm on the exact float-pair state).
std::optional<uint64_t> detect_cycle(const RotationSpec& spec, double x0,
                                     double y0, uint64_t max_period);

enum class DriftRegime { linear_drift, random_walk_dominated, periodic_lock };

struct RegimeReport {
  DriftRegime regime;
  double fitted_rate;    // per-step linear rate from the final decade
  double loglog_slope;   // slope of log err vs log t over the final decade
  std::optional<uint64_t> period;
  double predicted_rate;  // |unit_defect|, the exact systematic prediction
};

/// Classifies a finished series; runs a bounded cycle search when
/// `probe_cycle` is set.
RegimeReport analyze_regime(const RotationSpec& spec, const DriftSeries& series,
                            bool probe_cycle = true);

std::string regime_name(DriftRegime r);

/// The four closed-form roundoff growth curves sampled log-uniformly:
/// e0 = 2^-p t, e1 = 2^-p sqrt(t), e2 = 2^-2p t, e3 = 2^-2p k t.
struct ErrorCurvePoint {
  uint64_t t;
  double e0, e1, e2, e3;
};

std::vector<ErrorCurvePoint> predicted_error_curves(Precision p, int64_t k,
                                                    uint64_t t_max);

}  // namespace goodrot
