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

#include "core/scan.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace goodrot {

namespace {

void scan_range(const Precision p, int64_t k_max, int64_t y_begin, int64_t y_end,
                std::vector<ScanEntry>& out) {
  const int128 target_sq = p.unit_squared();
  const int64_t x_cap = static_cast<int64_t>(p.unit());
  for (int64_t y = y_begin; y < y_end; ++y) {
    const int128 rest = target_sq - static_cast<int128>(y) * y;
    // x^2 must land in [rest - k_max, rest + k_max]; that window holds at
    // most a couple of integers this far from the origin.
    const int128 lo2 = rest > k_max ? rest - k_max : 0;
    const int64_t x_lo = static_cast<int64_t>(isqrt(static_cast<uint128>(lo2)));
    const int64_t x_hi =
        static_cast<int64_t>(isqrt(static_cast<uint128>(rest + k_max)));
    for (int64_t x = std::max<int64_t>(x_lo, y); x <= x_hi && x <= x_cap; ++x) {
      const int128 k = (static_cast<int128>(x) * x - target_sq) +
                       static_cast<int128>(y) * y;
      if (k > k_max || k < -k_max) continue;
      if (x < y) continue;
      out.push_back(ScanEntry{x, y, k,
                              std::atan2(static_cast<double>(y),
                                         static_cast<double>(x))});
    }
  }
}

}  // namespace

ScanResult scan(const ScanQuery& q) {
  const unsigned p = q.p.bits();
  if (q.k_max < 0) throw std::invalid_argument("scan: k_max must be >= 0");
  if (static_cast<uint64_t>(q.k_max) >= q.p.unit())
    throw std::invalid_argument("scan: k_max must be < 2^p");
  if (p > 62)
    throw std::invalid_argument("scan: p > 62 exceeds the int64 lattice range");
  if (p > 34 && !q.force)
    throw RefusedError(
        "scan: refusing p > 34 (about 2^p/sqrt(2) iterations); set force");
  if (!q.octant_only)
    throw std::invalid_argument(
        "scan: full-plane scan not supported; expand symmetries on export");

  // Inclusive upper bound floor(sqrt((2^(2p) + k_max) / 2)).
  const uint128 limit2 =
      (static_cast<uint128>(q.p.unit_squared()) + static_cast<uint128>(q.k_max)) / 2;
  const int64_t y_max = static_cast<int64_t>(isqrt(limit2));

  unsigned workers = q.workers;
  if (workers == 0)
    workers = std::min(std::thread::hardware_concurrency(), 16u);
  if (workers < 1) workers = 1;
  const int64_t span = y_max + 1;
  if (workers > 1 && span < 1024) workers = 1;

  std::vector<std::vector<ScanEntry>> parts(workers);
  if (workers == 1) {
    scan_range(q.p, q.k_max, 0, span, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const int64_t chunk = (span + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const int64_t b = static_cast<int64_t>(w) * chunk;
      const int64_t e = std::min(span, b + chunk);
      if (b >= e) continue;
      pool.emplace_back(scan_range, q.p, q.k_max, b, e, std::ref(parts[w]));
    }
    for (auto& t : pool) t.join();
  }

  ScanResult result{q.p, q.k_max, {}};
  for (auto& part : parts)
    result.entries.insert(result.entries.end(), part.begin(), part.end());

  // Exact angle order makes the output independent of the partitioning.
  std::sort(result.entries.begin(), result.entries.end(),
            [](const ScanEntry& a, const ScanEntry& b) {
              if (angle_less(a.x, a.y, b.x, b.y)) return true;
              if (angle_less(b.x, b.y, a.x, a.y)) return false;
              return a.x < b.x;
            });
  result.entries.erase(
      std::unique(result.entries.begin(), result.entries.end(),
                  [](const ScanEntry& a, const ScanEntry& b) {
                    return a.x == b.x && a.y == b.y;
                  }),
      result.entries.end());

  // Re-verify every row in exact arithmetic before handing it out.
  for (const ScanEntry& e : result.entries) {
    const int128 check = (static_cast<int128>(e.x) * e.x - q.p.unit_squared()) +
                         static_cast<int128>(e.y) * e.y;
    if (check != e.k)
      throw std::logic_error("scan: defect re-verification failed");
  }
  return result;
}

std::optional<size_t> nearest_entry(const std::vector<ScanEntry>& entries,
                                    double theta_target) {
  if (entries.empty()) return std::nullopt;
  size_t best = 0;
  for (size_t i = 1; i < entries.size(); ++i) {
    const double di = std::fabs(entries[i].theta - theta_target);
    const double db = std::fabs(entries[best].theta - theta_target);
    if (di < db) {
      best = i;
    } else if (di == db) {
      const int128 ki = entries[i].k < 0 ? -entries[i].k : entries[i].k;
      const int128 kb = entries[best].k < 0 ? -entries[best].k : entries[best].k;
      if (ki < kb || (ki == kb && entries[i].y < entries[best].y)) best = i;
    }
  }
  return best;
}

}  // namespace goodrot
