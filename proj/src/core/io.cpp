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

#include "core/io.hpp"

#include "core/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace goodrot {

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("rename failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string format_theta(double theta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

std::string scan_to_csv(const ScanResult& result) {
  std::string out;
  out += "# theta is rounded display metadata; rebuild c and s from x, y, p "
         "only\n";
  out += "# p=" + std::to_string(result.p.bits()) +
         " k_max=" + std::to_string(result.k_max) + "\n";
  out += "x,y,theta,k\n";
  for (const ScanEntry& e : result.entries) {
    out += std::to_string(e.x) + "," + std::to_string(e.y) + "," +
           format_theta(e.theta) + "," + to_string_i128(e.k) + "\n";
  }
  return out;
}

std::string family_to_csv(const AngleCatalog& catalog) {
  std::string out;
  out += "# theta is rounded display metadata and should never be used to "
         "recompute c and s; rebuild them from the exact integers\n";
  out += "x,y,p,n,k,theta\n";
  const std::string k = to_string_i128(catalog.spec.scaled_defect());
  for (const CatalogEntry& e : catalog.entries) {
    out += std::to_string(e.x) + "," + std::to_string(e.y) + "," +
           std::to_string(catalog.spec.p) + "," +
           std::to_string(catalog.spec.n) + "," + k + "," +
           format_theta(e.theta) + "\n";
  }
  return out;
}

ParsedCsv parse_csv(const std::string& content) {
  ParsedCsv parsed;
  std::istringstream in(content);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      parsed.comments.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!have_header) {
      parsed.header = std::move(fields);
      have_header = true;
    } else {
      parsed.rows.push_back(std::move(fields));
    }
  }
  return parsed;
}

std::string drift_to_csv(const DriftSeries& series) {
  std::string out = "step,mean_err,std_err\n";
  for (const DriftPoint& p : series.checkpoints) {
    out += std::to_string(p.step) + "," + format_theta(p.mean_abs_err) + "," +
           format_theta(p.std_err) + "\n";
  }
  return out;
}

std::string regime_to_json(const RegimeReport& report) {
  nlohmann::json j;
  j["regime"] = regime_name(report.regime);
  j["fitted_rate"] = report.fitted_rate;
  j["loglog_slope"] = report.loglog_slope;
  j["predicted_rate"] = report.predicted_rate;
  if (report.period)
    j["period"] = *report.period;
  else
    j["period"] = nullptr;
  return j.dump(2) + "\n";
}

std::string curves_to_csv(const std::vector<ErrorCurvePoint>& curves) {
  std::string out = "t,e0,e1,e2,e3\n";
  for (const ErrorCurvePoint& p : curves) {
    out += std::to_string(p.t) + "," + format_theta(p.e0) + "," +
           format_theta(p.e1) + "," + format_theta(p.e2) + "," +
           format_theta(p.e3) + "\n";
  }
  return out;
}

std::string energy_to_csv(const EnergyRecord& record) {
  std::string out = "block_index,mean_abs_rel_energy_error\n";
  for (const EnergyBlock& b : record.blocks) {
    out += std::to_string(b.index) + "," + format_theta(b.mean_abs_err) + "\n";
  }
  return out;
}

}  // namespace goodrot
