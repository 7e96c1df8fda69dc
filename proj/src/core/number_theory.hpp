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
#include <vector>

#include "core/exactint.hpp"

namespace goodrot {

/// Prime decomposition of S split by residue class mod 4:
/// S = 2^alpha * prod f_j^beta_j * prod g_j^gamma_j with f_j = 1 (mod 4)
/// and g_j = 3 (mod 4).
struct Factorization {
  uint128 value = 1;
  unsigned alpha = 0;
  std::vector<std::pair<uint128, unsigned>> f_list;  // primes = 1 (mod 4)
  std::vector<std::pair<uint128, unsigned>> g_list;  // primes = 3 (mod 4)
};

/// Exact complex integer x + iy.
struct GaussianInt {
  int128 re = 0;
  int128 im = 0;

  GaussianInt() = default;
  GaussianInt(int128 r, int128 i) : re(r), im(i) {}

  GaussianInt conj() const { return {re, -im}; }
  uint128 norm() const {
    return static_cast<uint128>(re * re) + static_cast<uint128>(im * im);
  }
  GaussianInt operator*(const GaussianInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const GaussianInt& o) const {
    return re == o.re && im == o.im;
  }
  /// Rotation by i^k until the point lands in 0 <= theta < pi/2
  /// (re > 0, im >= 0; origin maps to itself).
  GaussianInt canonical() const;
};

enum class QuadrupletClass { axis, diagonal, generic };

/// All lattice points on x^2 + y^2 = S, stored as one canonical
/// representative per quadruplet {z, iz, -z, -iz}.
struct SolutionSet {
  uint128 S = 0;
  std::vector<GaussianInt> representatives;  // canonicalized, sorted by angle
  uint64_t quadruplet_count() const { return representatives.size(); }
};

/// Complete factorization classified mod 4, ascending primes.
/// Valid for 1 <= S < 2^127.
Factorization factorize(uint128 S);

/// Number of quadruplets h(S): zero when some gamma_j is odd, otherwise
/// prod (beta_j + 1).
uint64_t count_quadruplets(const Factorization& f);

/// The representative x + iy of prime f = 1 (mod 4) with x^2 + y^2 = f and
/// 0 < y < x, via Cornacchia's reduction seeded with a square root of -1.
GaussianInt gaussian_root(uint128 f);

/// Every quadruplet representative of x^2 + y^2 = S, built as
/// (1+i)^alpha * prod g_j^(gamma_j/2) * prod z_j^lambda_j conj(z_j)^(beta_j-lambda_j)
/// over all exponent choices. Empty set when h(S) = 0.
SolutionSet enumerate_solutions(const Factorization& f);

QuadrupletClass classify_quadruplet(const GaussianInt& z);

struct DensityEstimate {
  double count_estimate;       // 0.76422 * S_max / sqrt(log S_max)
  double mean_quadruplets;     // pi / 4
};

DensityEstimate solution_density(double S_max);

/// Pointwise probability that h(S) > 0 near S, from the differentiated
/// count estimate.
double representable_probability(double S);

}  // namespace goodrot
