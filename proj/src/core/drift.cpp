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

#include "core/drift.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace goodrot {

RotationSpec RotationSpec::from_grid(const GridPoint& g, PrecisionMode m) {
  RotationSpec s;
  s.source = Source::grid_point;
  s.point = g;
  s.mode = m;
  return s;
}

RotationSpec RotationSpec::from_dyadic(int j, PrecisionMode m) {
  if (j < 1) throw std::invalid_argument("RotationSpec: j must be >= 1");
  RotationSpec s;
  s.source = Source::dyadic_angle;
  s.j = j;
  s.mode = m;
  return s;
}

RotationSpec RotationSpec::from_pi_fraction(int j, PrecisionMode m) {
  if (j < 1) throw std::invalid_argument("RotationSpec: j must be >= 1");
  RotationSpec s;
  s.source = Source::pi_fraction;
  s.j = j;
  s.mode = m;
  return s;
}

namespace {

// Exact c^2 + s^2 - 1 for double constants. The mantissas are expanded to
// a common exponent and combined in 128-bit integers, so the value is
// exact whenever the two exponents are within a few binades (true for
// every angle of interest); otherwise an error-free double-double
// transformation covers the general case.
double exact_unit_defect_double(double c, double s) {
  int ec = 0, es = 0;
  const double fc = std::frexp(std::fabs(c), &ec);
  const double fs = std::frexp(std::fabs(s), &es);
  const auto mc = static_cast<int128>(std::ldexp(fc, 53));
  const auto ms = static_cast<int128>(std::ldexp(fs, 53));
  if (c != 0.0 && s != 0.0 && std::abs(ec - es) <= 5 &&
      std::min(ec, es) >= -9) {
    const int e = std::min(ec, es);
    const int128 tc = mc << (ec - e);
    const int128 ts = ms << (es - e);
    // c^2 + s^2 - 1 = (tc^2 + ts^2 - 2^(106-2e)) * 2^(2e-106)
    const int128 one = int128{1} << (106 - 2 * e);
    const int128 defect = (tc * tc - one) + ts * ts;
    return std::ldexp(static_cast<double>(defect), 2 * e - 106);
  }
  // General path: exact products via fma, exact sums via two-sum.
  double terms[5];
  terms[0] = c * c;
  terms[1] = std::fma(c, c, -terms[0]);
  terms[2] = s * s;
  terms[3] = std::fma(s, s, -terms[2]);
  terms[4] = -1.0;
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double s1 = sum + t;
    const double bb = s1 - sum;
    comp += (sum - (s1 - bb)) + (t - bb);
    sum = s1;
  }
  return sum + comp;
}

}  // namespace

RotationConstants resolve_rotation(const RotationSpec& spec) {
  double c = 0.0, s = 0.0;
  switch (spec.source) {
    case RotationSpec::Source::grid_point: {
      const auto cs = to_sin_cos(*spec.point);
      c = cs.first;
      s = cs.second;
      break;
    }
    case RotationSpec::Source::dyadic_angle: {
      const double theta = static_cast<double>(spec.j) / 512.0;  // exact
      c = std::cos(theta);
      s = std::sin(theta);
      break;
    }
    case RotationSpec::Source::pi_fraction: {
      const double theta = static_cast<double>(spec.j) * std::numbers::pi / 2000.0;
      c = std::cos(theta);
      s = std::sin(theta);
      break;
    }
  }
  RotationConstants rc;
  if (spec.mode == PrecisionMode::single) {
    const float cf = static_cast<float>(c);
    const float sf = static_cast<float>(s);
    rc.c = cf;
    rc.s = sf;
    // 24-bit squares fit a double exactly.
    rc.unit_defect = static_cast<double>(cf) * cf + static_cast<double>(sf) * sf - 1.0;
  } else {
    rc.c = c;
    rc.s = s;
    if (spec.source == RotationSpec::Source::grid_point) {
      // k * 2^(-2p), exactly, from the integer defect.
      const int128 k = defect(*spec.point);
      rc.unit_defect = std::ldexp(static_cast<double>(k),
                                  -2 * static_cast<int>(spec.point->p.bits()));
    } else {
      rc.unit_defect = exact_unit_defect_double(c, s);
    }
  }
  return rc;
}

std::vector<uint64_t> default_checkpoints(uint64_t steps) {
  std::vector<uint64_t> out;
  for (int i = 0;; ++i) {
    const double t = std::pow(10.0, i / 4.0);
    const auto step = static_cast<uint64_t>(std::llround(t));
    if (step > steps) break;
    if (out.empty() || out.back() != step) out.push_back(step);
  }
  if (out.empty() || out.back() != steps) out.push_back(steps);
  return out;
}

namespace {

template <typename Real>
std::vector<double> iterate_impl(Real c, Real s, Real x0, Real y0,
                                 const std::vector<uint64_t>& checkpoints) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  Real x = x0, y = y0;
  const Real r0sq = x0 * x0 + y0 * y0;
  uint64_t t = 0;
  for (uint64_t cp : checkpoints) {
    for (; t < cp; ++t) {
      const Real nx = c * x - s * y;
      const Real ny = s * x + c * y;
      x = nx;
      y = ny;
    }
    const Real rsq = x * x + y * y;
    if (!std::isfinite(static_cast<double>(rsq)))
      throw std::runtime_error("iterate_rotation: non-finite state at step " +
                               std::to_string(t));
    out.push_back(std::fabs(static_cast<double>(rsq / r0sq) - 1.0));
  }
  return out;
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Trial k starts at a pseudo-random angle drawn from (seed, k) only.
std::pair<double, double> trial_start(uint64_t seed, unsigned trial) {
  uint64_t state = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  const double phi = 2.0 * std::numbers::pi * u;
  return {std::cos(phi), std::sin(phi)};
}

}  // namespace

std::vector<double> iterate_rotation(const RotationSpec& spec, double x0,
                                     double y0,
                                     const std::vector<uint64_t>& checkpoints) {
  if (x0 == 0.0 && y0 == 0.0)
    throw std::invalid_argument("iterate_rotation: zero initial radius");
  if (!checkpoints.empty() && checkpoints.back() > 1000000000ULL)
    throw std::invalid_argument("iterate_rotation: steps must be <= 1e9");
  const RotationConstants rc = resolve_rotation(spec);
  if (spec.mode == PrecisionMode::single)
    return iterate_impl<float>(static_cast<float>(rc.c),
                               static_cast<float>(rc.s),
                               static_cast<float>(x0), static_cast<float>(y0),
                               checkpoints);
  return iterate_impl<double>(rc.c, rc.s, x0, y0, checkpoints);
}

DriftSeries run_drift(const RotationSpec& spec, uint64_t steps, unsigned trials,
                      uint64_t seed, unsigned workers) {
  if (trials < 1) throw std::invalid_argument("run_drift: trials must be >= 1");
  if (steps < 1 || steps > 1000000000ULL)
    throw std::invalid_argument("run_drift: steps must be in [1, 1e9]");
  const std::vector<uint64_t> checkpoints = default_checkpoints(steps);

  std::vector<std::vector<double>> per_trial(trials);
  if (workers == 0)
    workers = std::min({std::thread::hardware_concurrency(), trials, 16u});
  if (workers < 1) workers = 1;

  auto run_block = [&](unsigned begin, unsigned end) {
    for (unsigned k = begin; k < end; ++k) {
      const auto [x0, y0] = trial_start(seed, k);
      per_trial[k] = iterate_rotation(spec, x0, y0, checkpoints);
    }
  };
  if (workers == 1) {
    run_block(0, trials);
  } else {
    std::vector<std::thread> pool;
    const unsigned chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const unsigned b = w * chunk;
      const unsigned e = std::min(trials, b + chunk);
      if (b >= e) continue;
      pool.emplace_back(run_block, b, e);
    }
    for (auto& t : pool) t.join();
  }

  DriftSeries series{resolve_rotation(spec), trials, seed, {}};
  series.checkpoints.reserve(checkpoints.size());
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    double mean = 0.0;
    for (unsigned k = 0; k < trials; ++k) mean += per_trial[k][i];
    mean /= trials;
    double var = 0.0;
    for (unsigned k = 0; k < trials; ++k) {
      const double d = per_trial[k][i] - mean;
      var += d * d;
    }
    const double stdev = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    series.checkpoints.push_back(DriftPoint{checkpoints[i], mean, stdev});
  }
  return series;
}

namespace {

template <typename Real>
std::optional<uint64_t> brent_cycle(Real c, Real s, Real x0, Real y0,
                                    uint64_t max_period) {
  auto step = [c, s](std::pair<Real, Real> p) {
    return std::pair<Real, Real>{c * p.first - s * p.second,
                                 s * p.first + c * p.second};
  };
  auto same = [](const std::pair<Real, Real>& a, const std::pair<Real, Real>& b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
  };
  std::pair<Real, Real> tortoise{x0, y0};
  std::pair<Real, Real> hare = step(tortoise);
  uint64_t power = 1, lambda = 1;
  while (!same(tortoise, hare)) {
    if (power == lambda) {
      tortoise = hare;
      power <<= 1;
      lambda = 0;
      // The transient plus cycle cannot be longer than 4*max_period once
      // power passes that bound.
      if (power > 4 * max_period) return std::nullopt;
    }
    hare = step(hare);
    ++lambda;
  }
  if (lambda > max_period) return std::nullopt;
  return lambda;
}

}  // namespace

std::optional<uint64_t> detect_cycle(const RotationSpec& spec, double x0,
                                     double y0, uint64_t max_period) {
  if (max_period < 1 || max_period > 1000000ULL)
    throw std::invalid_argument("detect_cycle: max_period must be in [1, 1e6]");
  const RotationConstants rc = resolve_rotation(spec);
  if (spec.mode == PrecisionMode::single)
    return brent_cycle<float>(static_cast<float>(rc.c), static_cast<float>(rc.s),
                              static_cast<float>(x0), static_cast<float>(y0),
                              max_period);
  return brent_cycle<double>(rc.c, rc.s, x0, y0, max_period);
}

RegimeReport analyze_regime(const RotationSpec& spec, const DriftSeries& series,
                            bool probe_cycle) {
  RegimeReport report{};
  report.predicted_rate = std::fabs(series.constants.unit_defect);

  const auto& cps = series.checkpoints;
  if (cps.empty()) throw std::invalid_argument("analyze_regime: empty series");
  const uint64_t t_end = cps.back().step;

  // Final decade of checkpoints.
  std::vector<const DriftPoint*> tail;
  for (const DriftPoint& p : cps)
    if (p.step * 10 >= t_end && p.step >= 1) tail.push_back(&p);

  double st2 = 0.0, set = 0.0;
  double slx = 0.0, sly = 0.0, slxx = 0.0, slxy = 0.0;
  int nlog = 0;
  for (const DriftPoint* p : tail) {
    const double t = static_cast<double>(p->step);
    st2 += t * t;
    set += t * p->mean_abs_err;
    if (p->mean_abs_err > 0.0) {
      const double lx = std::log10(t);
      const double ly = std::log10(p->mean_abs_err);
      slx += lx;
      sly += ly;
      slxx += lx * lx;
      slxy += lx * ly;
      ++nlog;
    }
  }
  report.fitted_rate = st2 > 0.0 ? set / st2 : 0.0;
  report.loglog_slope =
      nlog >= 2 ? (nlog * slxy - slx * sly) / (nlog * slxx - slx * slx) : 0.0;

  if (probe_cycle) {
    const auto [x0, y0] = trial_start(series.seed, 0);
    const uint64_t horizon = std::min<uint64_t>(t_end, 65536);
    report.period = detect_cycle(spec, x0, y0, horizon);
  }

  if (report.period) {
    report.regime = DriftRegime::periodic_lock;
    return report;
  }
  // Random-walk envelope of the working precision at the end of the run.
  const double unit = spec.mode == PrecisionMode::single ? 0x1.0p-24 : 0x1.0p-53;
  const double envelope = unit * std::sqrt(static_cast<double>(t_end));
  const double err_end = cps.back().mean_abs_err;
  if (err_end > 3.0 * envelope && report.loglog_slope > 0.75)
    report.regime = DriftRegime::linear_drift;
  else
    report.regime = DriftRegime::random_walk_dominated;
  return report;
}

std::string regime_name(DriftRegime r) {
  switch (r) {
    case DriftRegime::linear_drift:
      return "linear_drift";
    case DriftRegime::random_walk_dominated:
      return "random_walk_dominated";
    case DriftRegime::periodic_lock:
      return "periodic_lock";
  }
  return "unknown";
}

std::vector<ErrorCurvePoint> predicted_error_curves(Precision p, int64_t k,
                                                    uint64_t t_max) {
  if (t_max < 1)
    throw std::invalid_argument("predicted_error_curves: t_max must be >= 1");
  std::vector<ErrorCurvePoint> out;
  const double u1 = std::ldexp(1.0, -static_cast<int>(p.bits()));
  const double u2 = std::ldexp(1.0, -2 * static_cast<int>(p.bits()));
  for (uint64_t t : default_checkpoints(t_max)) {
    const double td = static_cast<double>(t);
    out.push_back(ErrorCurvePoint{t, u1 * td, u1 * std::sqrt(td), u2 * td,
                                  u2 * static_cast<double>(k) * td});
  }
  return out;
}

}  // namespace goodrot
