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

#include "core/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace goodrot {

namespace {

// True when |v| is expressible with a 53-bit significand, i.e. the
// int64 -> double conversion is exact.
bool fits_double_mantissa(int64_t v) {
  if (v == 0) return true;
  uint64_t a = v == INT64_MIN ? (uint64_t{1} << 63) : static_cast<uint64_t>(std::abs(v));
  a >>= std::countr_zero(a);
  return std::bit_width(a) <= 53;
}

}  // namespace

Precision::Precision(unsigned p) : p_(p) {
  if (p < 2 || p > 63)
    throw std::invalid_argument("Precision: p must be in [2, 63]");
}

namespace {

uint64_t magnitude(int64_t v) {
  return v == INT64_MIN ? (uint64_t{1} << 63) : static_cast<uint64_t>(std::abs(v));
}

}  // namespace

GridPoint::GridPoint(int64_t x_, int64_t y_, Precision p_) : x(x_), y(y_), p(p_) {
  if (magnitude(x) > p.unit() || magnitude(y) > p.unit())
    throw std::invalid_argument("GridPoint: |x| and |y| must be <= 2^p");
}

int128 defect(const GridPoint& g) {
  const int128 x = g.x;
  const int128 y = g.y;
  // Grouped as (x^2 - 2^(2p)) + y^2 so the extreme corner x = y = 2^63
  // stays inside the signed 128-bit range.
  return (x * x - g.p.unit_squared()) + y * y;
}

std::pair<double, double> to_sin_cos(const GridPoint& g) {
  // Integer-to-double conversion must not round, and the 2^-p scaling
  // never does; together the round trip c * 2^p == x is exact.
  if (!fits_double_mantissa(g.x) || !fits_double_mantissa(g.y))
    throw std::domain_error("to_sin_cos: x or y not exactly representable");
  const double scale = std::ldexp(1.0, -static_cast<int>(g.p.bits()));
  return {static_cast<double>(g.x) * scale, static_cast<double>(g.y) * scale};
}

double theta_of(const GridPoint& g) {
  if (g.x == 0 && g.y == 0)
    throw std::invalid_argument("theta_of: undefined at the origin");
  return std::atan2(static_cast<double>(g.y), static_cast<double>(g.x));
}

bool angle_less(int64_t xa, int64_t ya, int64_t xb, int64_t yb) {
  // atan(ya/xa) < atan(yb/xb)  <=>  ya*xb < yb*xa  for x > 0.
  return static_cast<int128>(ya) * xb < static_cast<int128>(yb) * xa;
}

std::vector<std::pair<int64_t, int64_t>> expand_symmetries(int64_t x, int64_t y) {
  std::vector<std::pair<int64_t, int64_t>> out = {
      {x, y}, {-y, x}, {-x, -y}, {y, -x}, {y, x}, {-x, y}, {-y, -x}, {x, -y}};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace goodrot
