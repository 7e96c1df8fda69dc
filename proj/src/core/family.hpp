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

#include "core/grid.hpp"
#include "core/number_theory.hpp"

namespace goodrot {

/// Catalog request: solutions of x^2 + y^2 = 2^(2n) + 1, scaled by
/// 2^(p - n) to mantissa width p. The scaled defect is exactly 2^(2(p-n)).
struct FamilySpec {
  unsigned n;
  unsigned p;  // target width, p >= n

  FamilySpec(unsigned n_, unsigned p_);
  uint128 target() const { return (uint128{1} << (2 * n)) + 1; }
  unsigned q() const { return p - n; }
  int128 scaled_defect() const { return int128{1} << (2 * q()); }
};

struct CatalogEntry {
  int64_t x;  // base solution, |.| <= 2^n
  int64_t y;
  double theta;

  /// The width-p lattice point (x * 2^q, y * 2^q, p).
  GridPoint scaled(const FamilySpec& spec) const;
};

/// Octant catalog (0 <= theta <= pi/4) sorted by strictly increasing angle.
/// max_gap is the largest angular gap between consecutive solutions over
/// the whole circle, recovered from the octant by symmetry.
struct AngleCatalog {
  FamilySpec spec;
  Factorization factorization;
  std::vector<CatalogEntry> entries;
  double max_gap;
};

AngleCatalog generate_family(const FamilySpec& spec);

/// The per-prime Gaussian roots of S(n) with their arctangent angles,
/// ascending by prime. Display metadata for picking sign combinations.
struct ComponentAngle {
  uint128 prime;
  unsigned exponent;
  GaussianInt root;
  double theta;
};

std::vector<ComponentAngle> component_angles(const FamilySpec& spec);

/// Renders the exact constants of a grid point as source-embeddable text.
/// Templates: "generic" (decimal integer over 2 ** p), "hex" (hexadecimal
/// floats), "rational" (integer / 2^p pair). The integer text is always
/// exact decimal, never scientific notation.
std::string emit_constants(const GridPoint& g, const std::string& format);

}  // namespace goodrot
