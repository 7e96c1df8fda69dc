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
#include <string>
#include <vector>

#include "core/celestial.hpp"
#include "core/drift.hpp"
#include "core/family.hpp"
#include "core/scan.hpp"

namespace goodrot {

/// Writes via a temporary file in the same directory, then renames.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

uint64_t fnv1a64(const std::string& data);

/// theta with 17 significant digits (round-trips the double exactly).
std::string format_theta(double theta);

/// Scan table, Table-1 layout. Schema: x,y,theta,k.
std::string scan_to_csv(const ScanResult& result);

/// Catalog rows carry the unscaled solution (|x|, |y| <= 2^n); the width-p
/// numerators are x 2^(p-n), y 2^(p-n). Schema: x,y,p,n,k,theta.
std::string family_to_csv(const AngleCatalog& catalog);

struct ParsedCsv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

ParsedCsv parse_csv(const std::string& content);

/// Drift series data: step,mean_err,std_err.
std::string drift_to_csv(const DriftSeries& series);
std::string regime_to_json(const RegimeReport& report);

/// Predicted roundoff curves: t,e0,e1,e2,e3.
std::string curves_to_csv(const std::vector<ErrorCurvePoint>& curves);

/// Energy record: block_index,mean_abs_rel_energy_error.
std::string energy_to_csv(const EnergyRecord& record);

}  // namespace goodrot
