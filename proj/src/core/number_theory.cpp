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

#include "core/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace goodrot {

GaussianInt GaussianInt::canonical() const {
  GaussianInt z = *this;
  for (int i = 0; i < 4; ++i) {
    if (z.re > 0 && z.im >= 0) return z;
    z = GaussianInt{-z.im, z.re};
  }
  return z;  // origin
}

Factorization factorize(uint128 S) {
  if (S == 0 || S >> 127 != 0)
    throw std::invalid_argument("factorize: S must satisfy 1 <= S < 2^127");
  Factorization out;
  out.value = S;
  for (const auto& [p, e] : prime_factorization(S)) {
    if (p == 2)
      out.alpha = e;
    else if (p % 4 == 1)
      out.f_list.emplace_back(p, e);
    else
      out.g_list.emplace_back(p, e);
  }
  // Reassembly check: the decomposition must reproduce S exactly.
  uint128 check = 1;
  for (unsigned i = 0; i < out.alpha; ++i) check *= 2;
  for (const auto& [p, e] : out.f_list)
    for (unsigned i = 0; i < e; ++i) check *= p;
  for (const auto& [p, e] : out.g_list)
    for (unsigned i = 0; i < e; ++i) check *= p;
  if (check != S) throw std::logic_error("factorize: reassembly mismatch");
  return out;
}

uint64_t count_quadruplets(const Factorization& f) {
  for (const auto& [g, gamma] : f.g_list)
    if (gamma % 2 != 0) return 0;
  uint64_t h = 1;
  for (const auto& [p, beta] : f.f_list) h *= beta + 1;
  return h;
}

GaussianInt gaussian_root(uint128 f) {
  if (f % 4 != 1 || !is_prime(f))
    throw std::invalid_argument("gaussian_root: f must be a prime = 1 (mod 4)");
  // Square root of -1 mod f from a quadratic non-residue t: r = t^((f-1)/4).
  uint128 r = 0;
  for (uint128 t = 2;; ++t) {
    if (powmod(t, (f - 1) / 2, f) == f - 1) {
      r = powmod(t, (f - 1) / 4, f);
      break;
    }
  }
  // Cornacchia: Euclidean descent on (f, r) until the remainder drops
  // below sqrt(f); that remainder is one leg of the decomposition.
  uint128 a = f, b = r;
  while (b * b > f) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  const uint128 x = b;
  const uint128 y2 = f - x * x;
  const uint128 y = isqrt(y2);
  if (y * y != y2)
    throw std::logic_error("gaussian_root: residual is not a perfect square");
  const int128 hi = static_cast<int128>(std::max(x, y));
  const int128 lo = static_cast<int128>(std::min(x, y));
  GaussianInt z{hi, lo};
  if (z.norm() != f)
    throw std::logic_error("gaussian_root: norm check failed");
  return z;
}

namespace {

bool angle_before(const GaussianInt& a, const GaussianInt& b) {
  // Both canonical (first quadrant): order by y/x via cross products.
  const int128 lhs = a.im * b.re;
  const int128 rhs = b.im * a.re;
  if (lhs != rhs) return lhs < rhs;
  return a.re < b.re;
}

}  // namespace

SolutionSet enumerate_solutions(const Factorization& f) {
  SolutionSet out;
  out.S = f.value;
  const uint64_t expected = count_quadruplets(f);
  if (expected == 0) return out;
  if (f.value >> 126 != 0)
    throw std::overflow_error(
        "enumerate_solutions: S >= 2^126 overflows Gaussian products");

  // Invariant base factor: (1+i)^alpha * prod g^(gamma/2). Pairing
  // (1+i)^2 = 2i keeps the rotation absorbed by canonicalization.
  GaussianInt base{1, 0};
  for (unsigned i = 0; i < f.alpha / 2; ++i)
    base = base * GaussianInt{0, 2};  // (1+i)^2
  if (f.alpha % 2 != 0) base = base * GaussianInt{1, 1};
  for (const auto& [g, gamma] : f.g_list)
    for (unsigned i = 0; i < gamma / 2; ++i)
      base = base * GaussianInt{static_cast<int128>(g), 0};

  std::vector<GaussianInt> roots;
  roots.reserve(f.f_list.size());
  for (const auto& [p, beta] : f.f_list) roots.push_back(gaussian_root(p));

  std::vector<GaussianInt> acc = {base};
  for (size_t j = 0; j < f.f_list.size(); ++j) {
    const unsigned beta = f.f_list[j].second;
    const GaussianInt zj = roots[j];
    const GaussianInt zjc = zj.conj();
    std::vector<GaussianInt> next;
    next.reserve(acc.size() * (beta + 1));
    for (const GaussianInt& z : acc) {
      for (unsigned lambda = 0; lambda <= beta; ++lambda) {
        GaussianInt v = z;
        for (unsigned i = 0; i < lambda; ++i) v = v * zj;
        for (unsigned i = 0; i < beta - lambda; ++i) v = v * zjc;
        next.push_back(v);
      }
    }
    acc = std::move(next);
  }

  for (GaussianInt& z : acc) z = z.canonical();
  std::sort(acc.begin(), acc.end(), angle_before);
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());

  for (const GaussianInt& z : acc)
    if (z.norm() != f.value)
      throw std::logic_error("enumerate_solutions: norm check failed");
  if (acc.size() != expected)
    throw std::logic_error("enumerate_solutions: count disagrees with h(S)");
  out.representatives = std::move(acc);
  return out;
}

QuadrupletClass classify_quadruplet(const GaussianInt& z) {
  if (z.re == 0 && z.im == 0)
    throw std::invalid_argument("classify_quadruplet: zero has no class");
  if (z.re == 0 || z.im == 0) return QuadrupletClass::axis;
  const int128 ax = z.re < 0 ? -z.re : z.re;
  const int128 ay = z.im < 0 ? -z.im : z.im;
  if (ax == ay) return QuadrupletClass::diagonal;
  return QuadrupletClass::generic;
}

DensityEstimate solution_density(double S_max) {
  if (S_max < 3) throw std::invalid_argument("solution_density: S_max >= 3");
  const double logS = std::log(S_max);
  return {0.76422 * S_max / std::sqrt(logS), std::numbers::pi / 4.0};
}

double representable_probability(double S) {
  const double logS = std::log(S);
  return 0.76422 * (1.0 / std::sqrt(logS) -
                    1.0 / (2.0 * logS * std::sqrt(logS)));
}

}  // namespace goodrot
