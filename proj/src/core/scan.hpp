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
#include <vector>

#include "core/grid.hpp"

namespace goodrot {

struct ScanQuery {
  Precision p;
  int64_t k_max = 32;
  bool octant_only = true;
  /// Scans above p = 34 cost > 10^10 iterations; they run only when forced.
  bool force = false;
  /// 0 = one thread per available core (capped); 1 = strictly sequential.
  unsigned workers = 1;
};

struct ScanEntry {
  int64_t x;
  int64_t y;
  int128 k;
  double theta;
};

/// Entries sorted by strictly increasing angle (exact rational order).
struct ScanResult {
  Precision p;
  int64_t k_max;
  std::vector<ScanEntry> entries;
};

/// All lattice points with 0 <= y <= x <= 2^p and |x^2 + y^2 - 2^(2p)| <= k_max,
/// found by walking y and bracketing x with an exact integer square root.
/// Output is identical for every worker count.
ScanResult scan(const ScanQuery& q);

/// Index of the entry nearest to theta_target; ties broken by smaller |k|,
/// then smaller y. Empty input yields nullopt.
std::optional<size_t> nearest_entry(const std::vector<ScanEntry>& entries,
                                    double theta_target);

}  // namespace goodrot
