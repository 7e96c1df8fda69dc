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

#include "goodrot/goodrot.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/celestial.hpp"
#include "core/drift.hpp"
#include "core/errors.hpp"
#include "core/family.hpp"
#include "core/grid.hpp"
#include "core/io.hpp"
#include "core/number_theory.hpp"
#include "core/scan.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

gr_status fail(gr_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Uniform exception-to-status translation for every entry point.
template <typename Fn>
gr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(GR_ERR_ARGS, e.what());
  } catch (const goodrot::RefusedError& e) {
    return fail(GR_ERR_REFUSED, e.what());
  } catch (const goodrot::IoError& e) {
    return fail(GR_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(GR_ERR_NUMERIC, e.what());
  }
}

gr_status copy_out(const std::string& text, char* buf, size_t buflen) {
  if (buf == nullptr || buflen == 0 || text.size() + 1 > buflen)
    return fail(GR_ERR_ARGS, "output buffer too small (" +
                                 std::to_string(text.size() + 1) +
                                 " bytes needed)");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return GR_OK;
}

goodrot::RotationSpec to_spec(const gr_rotation& r) {
  using goodrot::PrecisionMode;
  using goodrot::RotationSpec;
  const PrecisionMode mode =
      r.single_precision ? PrecisionMode::single : PrecisionMode::double_prec;
  switch (r.source) {
    case GR_ROTATION_GRID:
      return RotationSpec::from_grid(
          goodrot::GridPoint(r.x, r.y, goodrot::Precision(r.p)), mode);
    case GR_ROTATION_DYADIC:
      return RotationSpec::from_dyadic(r.j, mode);
    case GR_ROTATION_PI_FRACTION:
      return RotationSpec::from_pi_fraction(r.j, mode);
    default:
      throw std::invalid_argument("gr_rotation: unknown source kind");
  }
}

}  // namespace

// Table rows unify scan results (n == p, scaled integers) and family
// catalogs (unscaled integers plus their width).
struct gr_table {
  // Either a scan result or a family catalog.
  bool is_family = false;
  goodrot::ScanResult scan;
  goodrot::AngleCatalog family;

  gr_table() : scan{goodrot::Precision(24), 0, {}},
               family{goodrot::FamilySpec(1, 1), {}, {}, 0.0} {}

  size_t size() const {
    return is_family ? family.entries.size() : scan.entries.size();
  }
};

struct gr_drift {
  goodrot::RotationSpec spec;
  goodrot::DriftSeries series;
  goodrot::RegimeReport report;
};

struct gr_orbit {
  goodrot::EnergyRecord record;
};

namespace {

goodrot::int128 table_defect(const gr_table& table, size_t index) {
  if (table.is_family) return table.family.spec.scaled_defect();
  return table.scan.entries[index].k;
}

}  // namespace

extern "C" {

const char* gr_version(void) { return goodrot::kVersion; }

const char* gr_last_error(void) { return g_last_error.c_str(); }

gr_status gr_to_sin_cos(int64_t x, int64_t y, uint32_t p, double* c,
                        double* s) {
  return guarded([&]() {
    if (c == nullptr || s == nullptr)
      return fail(GR_ERR_ARGS, "gr_to_sin_cos: null output");
    const auto cs =
        goodrot::to_sin_cos(goodrot::GridPoint(x, y, goodrot::Precision(p)));
    *c = cs.first;
    *s = cs.second;
    return GR_OK;
  });
}

gr_status gr_defect_i64(int64_t x, int64_t y, uint32_t p, int64_t* k) {
  return guarded([&]() {
    if (k == nullptr) return fail(GR_ERR_ARGS, "gr_defect_i64: null output");
    const goodrot::int128 defect =
        goodrot::defect(goodrot::GridPoint(x, y, goodrot::Precision(p)));
    if (defect > INT64_MAX || defect < INT64_MIN)
      return fail(GR_ERR_NUMERIC, "gr_defect_i64: defect exceeds int64 (" +
                                      goodrot::to_string_i128(defect) + ")");
    *k = static_cast<int64_t>(defect);
    return GR_OK;
  });
}

gr_status gr_theta_of(int64_t x, int64_t y, double* theta) {
  return guarded([&]() {
    if (theta == nullptr) return fail(GR_ERR_ARGS, "gr_theta_of: null output");
    // Width matters only for the bound check; use the widest.
    *theta = goodrot::theta_of(goodrot::GridPoint(x, y, goodrot::Precision(63)));
    return GR_OK;
  });
}

gr_status gr_emit_constants(int64_t x, int64_t y, uint32_t p,
                            const char* format, char* buf, size_t buflen) {
  return guarded([&]() {
    if (format == nullptr)
      return fail(GR_ERR_ARGS, "gr_emit_constants: null format");
    const std::string text = goodrot::emit_constants(
        goodrot::GridPoint(x, y, goodrot::Precision(p)), format);
    return copy_out(text, buf, buflen);
  });
}

gr_status gr_scan(uint32_t p, int64_t k_max, int force, uint32_t workers,
                  gr_table** out) {
  return guarded([&]() {
    if (out == nullptr) return fail(GR_ERR_ARGS, "gr_scan: null output");
    goodrot::ScanQuery query{goodrot::Precision(p), k_max, true, force != 0,
                             workers};
    auto table = std::make_unique<gr_table>();
    table->is_family = false;
    table->scan = goodrot::scan(query);
    *out = table.release();
    return GR_OK;
  });
}

gr_status gr_family(uint32_t n, uint32_t p, gr_table** out) {
  return guarded([&]() {
    if (out == nullptr) return fail(GR_ERR_ARGS, "gr_family: null output");
    auto table = std::make_unique<gr_table>();
    table->is_family = true;
    table->family = goodrot::generate_family(goodrot::FamilySpec(n, p));
    *out = table.release();
    return GR_OK;
  });
}

void gr_table_free(gr_table* table) { delete table; }

size_t gr_table_size(const gr_table* table) {
  return table == nullptr ? 0 : table->size();
}

gr_status gr_table_row(const gr_table* table, size_t index, int64_t* x,
                       int64_t* y, uint32_t* p, uint32_t* n, double* theta) {
  return guarded([&]() {
    if (table == nullptr || index >= table->size())
      return fail(GR_ERR_ARGS, "gr_table_row: bad table or index");
    if (table->is_family) {
      const auto& e = table->family.entries[index];
      if (x) *x = e.x;
      if (y) *y = e.y;
      if (p) *p = table->family.spec.p;
      if (n) *n = table->family.spec.n;
      if (theta) *theta = e.theta;
    } else {
      const auto& e = table->scan.entries[index];
      if (x) *x = e.x;
      if (y) *y = e.y;
      if (p) *p = table->scan.p.bits();
      if (n) *n = table->scan.p.bits();
      if (theta) *theta = e.theta;
    }
    return GR_OK;
  });
}

gr_status gr_table_defect_i64(const gr_table* table, size_t index,
                              int64_t* k) {
  return guarded([&]() {
    if (table == nullptr || index >= table->size() || k == nullptr)
      return fail(GR_ERR_ARGS, "gr_table_defect_i64: bad arguments");
    const goodrot::int128 defect = table_defect(*table, index);
    if (defect > INT64_MAX || defect < INT64_MIN)
      return fail(GR_ERR_NUMERIC,
                  "gr_table_defect_i64: defect exceeds int64; use "
                  "gr_table_defect_str");
    *k = static_cast<int64_t>(defect);
    return GR_OK;
  });
}

gr_status gr_table_defect_str(const gr_table* table, size_t index, char* buf,
                              size_t buflen) {
  return guarded([&]() {
    if (table == nullptr || index >= table->size())
      return fail(GR_ERR_ARGS, "gr_table_defect_str: bad arguments");
    return copy_out(goodrot::to_string_i128(table_defect(*table, index)), buf,
                    buflen);
  });
}

gr_status gr_table_nearest(const gr_table* table, double theta_target,
                           size_t* index) {
  return guarded([&]() {
    if (table == nullptr || index == nullptr)
      return fail(GR_ERR_ARGS, "gr_table_nearest: bad arguments");
    // Family entries share one defect, so the scan tie-break rules apply
    // uniformly after converting to scan entries.
    std::vector<goodrot::ScanEntry> entries;
    if (table->is_family) {
      entries.reserve(table->family.entries.size());
      for (const auto& e : table->family.entries)
        entries.push_back(goodrot::ScanEntry{
            e.x, e.y, table->family.spec.scaled_defect(), e.theta});
    } else {
      entries = table->scan.entries;
    }
    const auto best = goodrot::nearest_entry(entries, theta_target);
    if (!best)
      return fail(GR_ERR_NUMERIC, "gr_table_nearest: empty solution set");
    *index = *best;
    return GR_OK;
  });
}

gr_status gr_table_max_gap(const gr_table* table, double* gap) {
  return guarded([&]() {
    if (table == nullptr || gap == nullptr || !table->is_family)
      return fail(GR_ERR_ARGS, "gr_table_max_gap: family tables only");
    *gap = table->family.max_gap;
    return GR_OK;
  });
}

gr_status gr_table_write_csv(const gr_table* table, const char* path) {
  return guarded([&]() {
    if (table == nullptr || path == nullptr)
      return fail(GR_ERR_ARGS, "gr_table_write_csv: bad arguments");
    const std::string csv = table->is_family
                                ? goodrot::family_to_csv(table->family)
                                : goodrot::scan_to_csv(table->scan);
    goodrot::atomic_write_file(path, csv);
    return GR_OK;
  });
}

gr_status gr_drift_run(const gr_rotation* rotation, uint64_t steps,
                       uint32_t trials, uint64_t seed, uint32_t workers,
                       gr_drift** out) {
  return guarded([&]() {
    if (rotation == nullptr || out == nullptr)
      return fail(GR_ERR_ARGS, "gr_drift_run: bad arguments");
    auto drift = std::make_unique<gr_drift>();
    drift->spec = to_spec(*rotation);
    drift->series = goodrot::run_drift(drift->spec, steps, trials, seed, workers);
    drift->report = goodrot::analyze_regime(drift->spec, drift->series);
    *out = drift.release();
    return GR_OK;
  });
}

void gr_drift_free(gr_drift* drift) { delete drift; }

size_t gr_drift_size(const gr_drift* drift) {
  return drift == nullptr ? 0 : drift->series.checkpoints.size();
}

gr_status gr_drift_point(const gr_drift* drift, size_t index, uint64_t* step,
                         double* mean_err, double* std_err) {
  return guarded([&]() {
    if (drift == nullptr || index >= drift->series.checkpoints.size())
      return fail(GR_ERR_ARGS, "gr_drift_point: bad arguments");
    const auto& p = drift->series.checkpoints[index];
    if (step) *step = p.step;
    if (mean_err) *mean_err = p.mean_abs_err;
    if (std_err) *std_err = p.std_err;
    return GR_OK;
  });
}

gr_status gr_drift_regime(const gr_drift* drift, char* name_buf,
                          size_t name_buflen, double* fitted_rate,
                          double* predicted_rate, int64_t* period) {
  return guarded([&]() {
    if (drift == nullptr) return fail(GR_ERR_ARGS, "gr_drift_regime: null");
    if (fitted_rate) *fitted_rate = drift->report.fitted_rate;
    if (predicted_rate) *predicted_rate = drift->report.predicted_rate;
    if (period)
      *period = drift->report.period
                    ? static_cast<int64_t>(*drift->report.period)
                    : -1;
    if (name_buf != nullptr)
      return copy_out(goodrot::regime_name(drift->report.regime), name_buf,
                      name_buflen);
    return GR_OK;
  });
}

gr_status gr_drift_write_csv(const gr_drift* drift, const char* path) {
  return guarded([&]() {
    if (drift == nullptr || path == nullptr)
      return fail(GR_ERR_ARGS, "gr_drift_write_csv: bad arguments");
    goodrot::atomic_write_file(path, goodrot::drift_to_csv(drift->series));
    return GR_OK;
  });
}

gr_status gr_drift_write_regime_json(const gr_drift* drift, const char* path) {
  return guarded([&]() {
    if (drift == nullptr || path == nullptr)
      return fail(GR_ERR_ARGS, "gr_drift_write_regime_json: bad arguments");
    goodrot::atomic_write_file(path, goodrot::regime_to_json(drift->report));
    return GR_OK;
  });
}

gr_status gr_detect_cycle(const gr_rotation* rotation, double x0, double y0,
                          uint64_t max_period, int64_t* period) {
  return guarded([&]() {
    if (rotation == nullptr || period == nullptr)
      return fail(GR_ERR_ARGS, "gr_detect_cycle: bad arguments");
    const auto found =
        goodrot::detect_cycle(to_spec(*rotation), x0, y0, max_period);
    *period = found ? static_cast<int64_t>(*found) : -1;
    return GR_OK;
  });
}

gr_status gr_error_curves_write_csv(uint32_t p, int64_t k, uint64_t t_max,
                                    const char* path) {
  return guarded([&]() {
    if (path == nullptr)
      return fail(GR_ERR_ARGS, "gr_error_curves_write_csv: null path");
    const auto curves =
        goodrot::predicted_error_curves(goodrot::Precision(p), k, t_max);
    goodrot::atomic_write_file(path, goodrot::curves_to_csv(curves));
    return GR_OK;
  });
}

gr_status gr_orbit_run(const gr_orbit_spec* spec, uint64_t steps,
                       uint64_t block, gr_orbit** out) {
  return guarded([&]() {
    if (spec == nullptr || out == nullptr)
      return fail(GR_ERR_ARGS, "gr_orbit_run: bad arguments");
    goodrot::ProblemSpec problem;
    problem.mu = spec->mu;
    problem.tau = spec->tau;
    problem.j_oblateness = spec->j_oblateness;
    if (spec->use_raw_theta) {
      problem.raw_theta = spec->raw_theta;
    } else {
      if (spec->rotation.source != GR_ROTATION_GRID)
        return fail(GR_ERR_ARGS,
                    "gr_orbit_run: orbit rotation must be a grid point or "
                    "raw_theta");
      problem.rotation_point = goodrot::GridPoint(
          spec->rotation.x, spec->rotation.y,
          goodrot::Precision(spec->rotation.p));
    }
    const goodrot::OrbitState start =
        goodrot::make_orbit(spec->a, spec->e, spec->inc, spec->mu);
    auto orbit = std::make_unique<gr_orbit>();
    orbit->record = goodrot::run_energy_record(start, problem, steps, block);
    *out = orbit.release();
    return GR_OK;
  });
}

void gr_orbit_free(gr_orbit* orbit) { delete orbit; }

size_t gr_orbit_blocks(const gr_orbit* orbit) {
  return orbit == nullptr ? 0 : orbit->record.blocks.size();
}

gr_status gr_orbit_block(const gr_orbit* orbit, size_t index,
                         uint64_t* block_index, double* mean_err) {
  return guarded([&]() {
    if (orbit == nullptr || index >= orbit->record.blocks.size())
      return fail(GR_ERR_ARGS, "gr_orbit_block: bad arguments");
    if (block_index) *block_index = orbit->record.blocks[index].index;
    if (mean_err) *mean_err = orbit->record.blocks[index].mean_abs_err;
    return GR_OK;
  });
}

gr_status gr_orbit_slope(const gr_orbit* orbit, double* slope) {
  return guarded([&]() {
    if (orbit == nullptr || slope == nullptr)
      return fail(GR_ERR_ARGS, "gr_orbit_slope: bad arguments");
    *slope = orbit->record.fitted_slope;
    return GR_OK;
  });
}

gr_status gr_orbit_write_csv(const gr_orbit* orbit, const char* path) {
  return guarded([&]() {
    if (orbit == nullptr || path == nullptr)
      return fail(GR_ERR_ARGS, "gr_orbit_write_csv: bad arguments");
    goodrot::atomic_write_file(path, goodrot::energy_to_csv(orbit->record));
    return GR_OK;
  });
}

gr_status gr_checksum_file(const char* path, uint64_t* checksum) {
  return guarded([&]() {
    if (path == nullptr || checksum == nullptr)
      return fail(GR_ERR_ARGS, "gr_checksum_file: bad arguments");
    *checksum = goodrot::fnv1a64(goodrot::read_file(path));
    return GR_OK;
  });
}

gr_status gr_write_text_file(const char* path, const char* content) {
  return guarded([&]() {
    if (path == nullptr || content == nullptr)
      return fail(GR_ERR_ARGS, "gr_write_text_file: bad arguments");
    goodrot::atomic_write_file(path, content);
    return GR_OK;
  });
}

}  // extern "C"
