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

// Command-line front end. Links only the C API of the shared library.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "goodrot/goodrot.h"

namespace {

int from_status(gr_status status) {
  if (status != GR_OK) std::fprintf(stderr, "error: %s\n", gr_last_error());
  return static_cast<int>(status);
}

unsigned env_workers() {
  const char* env = std::getenv("GOODROT_WORKERS");
  if (env == nullptr) return 0;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string checksum_hex(const std::string& path) {
  uint64_t sum = 0;
  if (gr_checksum_file(path.c_str(), &sum) != GR_OK) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, sum);
  return buf;
}

// Every data-producing run records how to reproduce it bit-exactly.
int write_manifest(const std::string& command,
                   const std::map<std::string, std::string>& parameters,
                   uint64_t seed, const std::vector<std::string>& outputs,
                   const std::string& manifest_path) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = gr_version();
  j["seed"] = seed;
  j["parameters"] = nlohmann::json::object();
  for (const auto& [key, value] : parameters) j["parameters"][key] = value;
  j["outputs"] = nlohmann::json::array();
  for (const std::string& path : outputs)
    j["outputs"].push_back({{"path", path}, {"fnv1a64", checksum_hex(path)}});
  const std::string text = j.dump(2) + "\n";
  return from_status(gr_write_text_file(manifest_path.c_str(), text.c_str()));
}

std::string defect_string(const gr_table* table, size_t row) {
  char buf[48];
  if (gr_table_defect_str(table, row, buf, sizeof buf) != GR_OK) return "?";
  return buf;
}

struct TableDeleter {
  void operator()(gr_table* t) const { gr_table_free(t); }
};
struct DriftDeleter {
  void operator()(gr_drift* d) const { gr_drift_free(d); }
};
struct OrbitDeleter {
  void operator()(gr_orbit* o) const { gr_orbit_free(o); }
};

int run_scan(uint32_t p, int64_t kmax, bool force, unsigned workers,
             const std::string& format, const std::string& out) {
  gr_table* raw = nullptr;
  const gr_status status = gr_scan(p, kmax, force ? 1 : 0, workers, &raw);
  if (status != GR_OK) return from_status(status);
  std::unique_ptr<gr_table, TableDeleter> table(raw);

  if (format == "json") {
    nlohmann::json j;
    j["p"] = p;
    j["k_max"] = kmax;
    j["entries"] = nlohmann::json::array();
    for (size_t i = 0; i < gr_table_size(table.get()); ++i) {
      int64_t x = 0, y = 0;
      double theta = 0.0;
      gr_table_row(table.get(), i, &x, &y, nullptr, nullptr, &theta);
      j["entries"].push_back({{"x", x},
                              {"y", y},
                              {"theta", theta},
                              {"k", defect_string(table.get(), i)}});
    }
    const std::string text = j.dump(2) + "\n";
    if (int rc = from_status(gr_write_text_file(out.c_str(), text.c_str())))
      return rc;
  } else {
    if (int rc = from_status(gr_table_write_csv(table.get(), out.c_str())))
      return rc;
  }
  std::printf("%zu solutions with |k| <= %" PRId64 " at p=%u -> %s\n",
              gr_table_size(table.get()), kmax, p, out.c_str());
  return write_manifest("scan",
                        {{"p", std::to_string(p)},
                         {"k_max", std::to_string(kmax)},
                         {"format", format},
                         {"out", out}},
                        0, {out}, out + ".manifest.json");
}

int run_family(uint32_t n, uint32_t p, const std::string& out) {
  gr_table* raw = nullptr;
  const gr_status status = gr_family(n, p, &raw);
  if (status != GR_OK) return from_status(status);
  std::unique_ptr<gr_table, TableDeleter> table(raw);
  if (int rc = from_status(gr_table_write_csv(table.get(), out.c_str())))
    return rc;
  double gap = 0.0;
  gr_table_max_gap(table.get(), &gap);
  std::printf("%zu octant solutions of x^2 + y^2 = 2^%u + 1 at p=%u, "
              "max circle gap %.6f -> %s\n",
              gr_table_size(table.get()), 2 * n, p, gap, out.c_str());
  return write_manifest("family",
                        {{"n", std::to_string(n)},
                         {"p", std::to_string(p)},
                         {"out", out}},
                        0, {out}, out + ".manifest.json");
}

int run_pick(uint32_t p, bool p_given, double theta, int64_t kmax, int n,
             const std::string& emit, const std::string& out) {
  gr_table* raw = nullptr;
  gr_status status = GR_OK;
  if (n > 0) {
    const uint32_t width = p_given ? p : static_cast<uint32_t>(n);
    status = gr_family(static_cast<uint32_t>(n), width, &raw);
  } else {
    status = gr_scan(p, kmax, 0, env_workers(), &raw);
  }
  if (status != GR_OK) return from_status(status);
  std::unique_ptr<gr_table, TableDeleter> table(raw);

  size_t index = 0;
  if (gr_status rc = gr_table_nearest(table.get(), theta, &index); rc != GR_OK)
    return from_status(rc);
  int64_t x = 0, y = 0;
  uint32_t row_p = 0, row_n = 0;
  double row_theta = 0.0;
  gr_table_row(table.get(), index, &x, &y, &row_p, &row_n, &row_theta);

  // Family rows store width-n integers; scale to the requested width.
  const int64_t sx = x << (row_p - row_n);
  const int64_t sy = y << (row_p - row_n);
  std::string text;
  {
    char line[160];
    std::snprintf(line, sizeof line,
                  "x=%" PRId64 " y=%" PRId64 " p=%u k=%s theta=%.8f\n", sx, sy,
                  row_p, defect_string(table.get(), index).c_str(), row_theta);
    text = line;
  }
  if (!emit.empty()) {
    char buf[512];
    if (gr_status rc = gr_emit_constants(sx, sy, row_p, emit.c_str(), buf,
                                         sizeof buf);
        rc != GR_OK)
      return from_status(rc);
    text += buf;
  }
  std::fputs(text.c_str(), stdout);
  if (!out.empty()) {
    if (int rc = from_status(gr_write_text_file(out.c_str(), text.c_str())))
      return rc;
    return write_manifest("pick",
                          {{"p", std::to_string(p)},
                           {"theta", fmt17(theta)},
                           {"k_max", std::to_string(kmax)},
                           {"n", std::to_string(n)},
                           {"emit", emit},
                           {"out", out}},
                          0, {out}, out + ".manifest.json");
  }
  return 0;
}

int run_drift(const gr_rotation& rotation, uint64_t steps, uint32_t trials,
              uint64_t seed, unsigned workers, bool detect, uint64_t max_period,
              const std::string& out,
              const std::map<std::string, std::string>& params) {
  gr_drift* raw = nullptr;
  const gr_status status =
      gr_drift_run(&rotation, steps, trials, seed, workers, &raw);
  if (status != GR_OK) return from_status(status);
  std::unique_ptr<gr_drift, DriftDeleter> drift(raw);

  char regime[48];
  double fitted = 0.0, predicted = 0.0;
  int64_t period = -1;
  gr_drift_regime(drift.get(), regime, sizeof regime, &fitted, &predicted,
                  &period);
  std::printf("regime=%s fitted_rate=%.6g predicted_rate=%.6g", regime, fitted,
              predicted);
  if (period >= 0) std::printf(" period=%" PRId64, period);
  std::printf("\n");

  if (detect) {
    int64_t explicit_period = -1;
    if (gr_status rc =
            gr_detect_cycle(&rotation, 1.0, 0.0, max_period, &explicit_period);
        rc != GR_OK)
      return from_status(rc);
    if (explicit_period >= 0)
      std::printf("cycle from (1, 0): period %" PRId64 "\n", explicit_period);
    else
      std::printf("cycle from (1, 0): none within %" PRIu64 " steps\n",
                  max_period);
  }

  const std::string csv = out + ".csv";
  const std::string report = out + ".regime.json";
  if (int rc = from_status(gr_drift_write_csv(drift.get(), csv.c_str())))
    return rc;
  if (int rc =
          from_status(gr_drift_write_regime_json(drift.get(), report.c_str())))
    return rc;
  return write_manifest("drift", params, seed, {csv, report},
                        out + ".manifest.json");
}

int run_orbit(const std::string& spec_path, uint64_t steps_override,
              uint64_t block_override, const std::string& out) {
  std::ifstream in(spec_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", spec_path.c_str());
    return GR_ERR_IO;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: bad spec file: %s\n", e.what());
    return GR_ERR_ARGS;
  }

  gr_orbit_spec spec{};
  spec.mu = j.value("mu", 1.0);
  spec.a = j.value("a", 1.0);
  spec.e = j.value("e", 0.05);
  spec.inc = j.value("inc", 0.2);
  spec.tau = j.value("tau", 0.1);
  spec.j_oblateness = j.value("j_oblateness", 0.0);
  uint64_t steps = j.value("steps", uint64_t{100000});
  uint64_t block = j.value("block", uint64_t{10000});
  if (steps_override > 0) steps = steps_override;
  if (block_override > 0) block = block_override;

  if (!j.contains("rotation")) {
    std::fprintf(stderr, "error: spec file lacks a rotation section\n");
    return GR_ERR_ARGS;
  }
  const auto& rot = j["rotation"];
  const std::string type = rot.value("type", "");
  if (type == "grid") {
    spec.use_raw_theta = 0;
    spec.rotation.source = GR_ROTATION_GRID;
    spec.rotation.x = rot.value("x", int64_t{0});
    spec.rotation.y = rot.value("y", int64_t{0});
    spec.rotation.p = rot.value("p", uint32_t{53});
  } else if (type == "raw") {
    spec.use_raw_theta = 1;
    spec.raw_theta = rot.value("theta", 0.0);
  } else {
    std::fprintf(stderr, "error: rotation type must be \"grid\" or \"raw\"\n");
    return GR_ERR_ARGS;
  }

  gr_orbit* raw = nullptr;
  const gr_status status = gr_orbit_run(&spec, steps, block, &raw);
  if (status != GR_OK) return from_status(status);
  std::unique_ptr<gr_orbit, OrbitDeleter> orbit(raw);

  double slope = 0.0;
  gr_orbit_slope(orbit.get(), &slope);
  std::printf("blocks=%zu fitted_slope=%.6g per step\n",
              gr_orbit_blocks(orbit.get()), slope);

  const std::string csv = out + ".csv";
  if (int rc = from_status(gr_orbit_write_csv(orbit.get(), csv.c_str())))
    return rc;
  std::map<std::string, std::string> params = {
      {"spec", spec_path},
      {"steps", std::to_string(steps)},
      {"block", std::to_string(block)},
      {"tau", fmt17(spec.tau)},
      {"j_oblateness", fmt17(spec.j_oblateness)}};
  if (spec.use_raw_theta) {
    params["rotation"] = "raw:" + fmt17(spec.raw_theta);
  } else {
    params["rotation"] = "grid:" + std::to_string(spec.rotation.x) + "," +
                         std::to_string(spec.rotation.y) + "," +
                         std::to_string(spec.rotation.p);
  }
  return write_manifest("orbit", params, 0, {csv}, out + ".manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goodrot: exact rotation constants with negligible radius "
               "drift, plus drift and orbit verification harnesses"};
  app.require_subcommand(1);

  // scan
  auto* scan_cmd = app.add_subcommand(
      "scan", "Enumerate octant lattice points with |x^2+y^2-2^(2p)| <= k_max");
  uint32_t scan_p = 24;
  int64_t scan_kmax = 32;
  bool scan_force = false;
  unsigned scan_workers = env_workers();
  std::string scan_format = "csv";
  std::string scan_out = "scan.csv";
  scan_cmd->add_option("--p", scan_p, "Mantissa width")->required();
  scan_cmd->add_option("--kmax", scan_kmax, "Defect window")->required();
  scan_cmd->add_flag("--force", scan_force, "Run even when p > 34");
  scan_cmd->add_option("--workers", scan_workers,
                       "Worker threads (0 = auto; result is identical)");
  scan_cmd->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--out", scan_out, "Output path");

  // family
  auto* family_cmd = app.add_subcommand(
      "family", "Catalog solutions of x^2 + y^2 = 2^(2n) + 1 for width p");
  uint32_t family_n = 51, family_p = 53;
  std::string family_out = "family.csv";
  family_cmd->add_option("--n", family_n, "Family index")->required();
  family_cmd->add_option("--p", family_p, "Mantissa width")->required();
  family_cmd->add_option("--out", family_out, "Output path");

  // pick
  auto* pick_cmd = app.add_subcommand(
      "pick", "Select the solution nearest a target angle; ties prefer the "
              "smaller |k|, then the smaller y");
  uint32_t pick_p = 24;
  double pick_theta = 0.0;
  int64_t pick_kmax = 32;
  int pick_n = 0;
  std::string pick_emit;
  std::string pick_out;
  auto* pick_p_opt = pick_cmd->add_option("--p", pick_p, "Mantissa width");
  pick_cmd->add_option("--theta", pick_theta, "Target angle in [0, pi/4]")
      ->required();
  pick_cmd->add_option("--kmax", pick_kmax, "Defect window (scan mode)");
  pick_cmd->add_option("--n", pick_n,
                       "Use the 2^(2n)+1 family instead of scanning");
  pick_cmd->add_option("--emit", pick_emit,
                       "Also emit constants: generic, hex or rational");
  pick_cmd->add_option("--out", pick_out, "Optional output file");

  // drift
  auto* drift_cmd = app.add_subcommand(
      "drift", "Iterate the rotation map and track |R^2/R0^2 - 1|");
  int64_t drift_x = 0, drift_y = 0;
  uint32_t drift_p = 53;
  int drift_dyadic = 0, drift_pi = 0;
  bool drift_single = false, drift_detect = false;
  uint64_t drift_steps = 1000000, drift_seed = 19937, drift_maxp = 100000;
  uint32_t drift_trials = 20;
  unsigned drift_workers = env_workers();
  std::string drift_out = "drift";
  auto* ox = drift_cmd->add_option("--x", drift_x, "Grid point x");
  auto* oy = drift_cmd->add_option("--y", drift_y, "Grid point y");
  drift_cmd->add_option("--p", drift_p, "Grid point width");
  auto* od = drift_cmd->add_option("--dyadic", drift_dyadic,
                                   "Rounded angle theta = j/512");
  auto* opi = drift_cmd->add_option("--pi-fraction", drift_pi,
                                    "Rounded angle theta = j pi/2000");
  ox->needs(oy);
  od->excludes(ox);
  opi->excludes(ox);
  opi->excludes(od);
  drift_cmd->add_flag("--single", drift_single, "Emulate 24-bit arithmetic");
  drift_cmd->add_option("--steps", drift_steps, "Iterations (<= 1e9)");
  drift_cmd->add_option("--trials", drift_trials, "Random initial conditions");
  drift_cmd->add_option("--seed", drift_seed, "Trial seed");
  drift_cmd->add_option("--workers", drift_workers,
                        "Worker threads (result is identical)");
  drift_cmd->add_flag("--detect-cycle", drift_detect,
                      "Search for an exact periodic cycle");
  drift_cmd->add_option("--max-period", drift_maxp, "Cycle search bound");
  drift_cmd->add_option("--out", drift_out, "Output base path");

  // curves
  auto* curves_cmd = app.add_subcommand(
      "curves", "Closed-form roundoff growth curves for plotting");
  uint32_t curves_p = 24;
  int64_t curves_k = 32;
  uint64_t curves_tmax = 100000000000000ULL;
  std::string curves_out = "curves.csv";
  curves_cmd->add_option("--p", curves_p, "Mantissa width")->required();
  curves_cmd->add_option("--k", curves_k, "Defect for the scaled curve")
      ->required();
  curves_cmd->add_option("--tmax", curves_tmax, "Largest step count");
  curves_cmd->add_option("--out", curves_out, "Output path");

  // orbit
  auto* orbit_cmd = app.add_subcommand(
      "orbit", "Rotating-frame perturbed Kepler run (kick-drift-kick)");
  std::string orbit_spec, orbit_out = "orbit";
  uint64_t orbit_steps = 0, orbit_block = 0;
  orbit_cmd->add_option("--spec", orbit_spec, "Problem spec JSON file")
      ->required();
  orbit_cmd->add_option("--steps", orbit_steps, "Override spec steps");
  orbit_cmd->add_option("--block", orbit_block, "Override spec block size");
  orbit_cmd->add_option("--out", orbit_out, "Output base path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : GR_ERR_ARGS;
  }

  if (scan_cmd->parsed())
    return run_scan(scan_p, scan_kmax, scan_force, scan_workers, scan_format,
                    scan_out);
  if (family_cmd->parsed()) return run_family(family_n, family_p, family_out);
  if (pick_cmd->parsed())
    return run_pick(pick_p, pick_p_opt->count() > 0, pick_theta, pick_kmax,
                    pick_n, pick_emit, pick_out);
  if (drift_cmd->parsed()) {
    gr_rotation rotation{};
    std::map<std::string, std::string> params;
    if (od->count() > 0) {
      rotation.source = GR_ROTATION_DYADIC;
      rotation.j = drift_dyadic;
      params["dyadic_j"] = std::to_string(drift_dyadic);
    } else if (opi->count() > 0) {
      rotation.source = GR_ROTATION_PI_FRACTION;
      rotation.j = drift_pi;
      params["pi_fraction_j"] = std::to_string(drift_pi);
    } else if (ox->count() > 0) {
      rotation.source = GR_ROTATION_GRID;
      rotation.x = drift_x;
      rotation.y = drift_y;
      rotation.p = drift_p;
      params["grid"] = std::to_string(drift_x) + "," + std::to_string(drift_y) +
                       "," + std::to_string(drift_p);
    } else {
      std::fprintf(stderr,
                   "error: one of --x/--y, --dyadic or --pi-fraction is "
                   "required\n");
      return GR_ERR_ARGS;
    }
    rotation.single_precision = drift_single ? 1 : 0;
    params["steps"] = std::to_string(drift_steps);
    params["trials"] = std::to_string(drift_trials);
    params["single"] = drift_single ? "1" : "0";
    params["out"] = drift_out;
    return run_drift(rotation, drift_steps, drift_trials, drift_seed,
                     drift_workers, drift_detect, drift_maxp, drift_out,
                     params);
  }
  if (curves_cmd->parsed()) {
    const gr_status status = gr_error_curves_write_csv(
        curves_p, curves_k, curves_tmax, curves_out.c_str());
    if (status != GR_OK) return from_status(status);
    std::printf("curves -> %s\n", curves_out.c_str());
    return write_manifest("curves",
                          {{"p", std::to_string(curves_p)},
                           {"k", std::to_string(curves_k)},
                           {"tmax", std::to_string(curves_tmax)},
                           {"out", curves_out}},
                          0, {curves_out}, curves_out + ".manifest.json");
  }
  if (orbit_cmd->parsed())
    return run_orbit(orbit_spec, orbit_steps, orbit_block, orbit_out);
  return GR_ERR_ARGS;
}
