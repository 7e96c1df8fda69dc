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
#include <utility>
#include <vector>

#include "core/exactint.hpp"

namespace goodrot {

/// Mantissa bit count of the target binary format (24 for IEEE single,
/// 53 for IEEE double). Bounded so x, y and x^2 + y^2 stay inside exact
/// 128-bit integer arithmetic.
class Precision {
 public:
  explicit Precision(unsigned p);
  unsigned bits() const { return p_; }
  /// 2^p as an exact integer (unsigned: p = 63 overflows int64).
  uint64_t unit() const { return uint64_t{1} << p_; }
  /// 2^(2p) as an exact integer.
  int128 unit_squared() const { return int128{1} << (2 * p_); }

  friend bool operator==(Precision a, Precision b) { return a.p_ == b.p_; }

 private:
  unsigned p_;
};

/// Integer lattice pair (x, y) standing for the constants
/// c = x * 2^-p and s = y * 2^-p.
struct GridPoint {
  int64_t x;
  int64_t y;
  Precision p;

  GridPoint(int64_t x_, int64_t y_, Precision p_);
};

/// x^2 + y^2 - 2^(2p), always exact. Never computed in floating point.
int128 defect(const GridPoint& g);

/// The exact (c, s) pair. Both values are produced by integer-to-float
/// conversion followed by scaling with the exact power 2^-p; the function
/// refuses points whose conversion would round.
std::pair<double, double> to_sin_cos(const GridPoint& g);

/// atan2(y, x). Display metadata only: the angle must never be used to
/// regenerate c and s.
double theta_of(const GridPoint& g);

/// Exact angle order for first-quadrant points: compares y_a/x_a with
/// y_b/x_b by cross multiplication in 128-bit integers.
bool angle_less(int64_t xa, int64_t ya, int64_t xb, int64_t yb);

/// The up-to-8 distinct images of (x, y) under (x,y) -> (+-x, +-y), (+-y, +-x).
std::vector<std::pair<int64_t, int64_t>> expand_symmetries(int64_t x, int64_t y);

}  // namespace goodrot
