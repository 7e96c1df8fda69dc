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

#include "core/exactint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace goodrot {

uint128 isqrt(uint128 n) {
  if (n == 0) return 0;
  // Double sqrt gives ~53 correct bits; fix up the rest by Newton steps
  // in integer arithmetic, then a final correction loop.
  uint128 x = static_cast<uint128>(std::sqrt(static_cast<double>(n)));
  if (x == 0) x = 1;
  for (int i = 0; i < 6; ++i) {
    uint128 nx = (x + n / x) >> 1;
    if (nx >= x && nx - x <= 1) break;
    if (x >= nx && x - nx <= 1) {
      x = nx;
      break;
    }
    x = nx;
  }
  while (x > 0 && x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

uint128 mulmod(uint128 a, uint128 b, uint128 m) {
  a %= m;
  b %= m;
  if (m <= UINT64_MAX) return (a * b) % m;
  if (a < b) std::swap(a, b);
  // Shift-and-add on the smaller operand; m < 2^127 keeps every partial
  // sum below 2^128.
  uint128 result = 0;
  while (b > 0) {
    if (b & 1) {
      result += a;
      if (result >= m) result -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return result;
}

uint128 powmod(uint128 base, uint128 exp, uint128 m) {
  if (m == 1) return 0;
  uint128 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace {

bool miller_rabin_witness(uint128 n, uint128 a, uint128 d, int r) {
  uint128 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

}  // namespace

bool is_prime(uint128 n) {
  if (n < 2) return false;
  for (uint128 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint128 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // The first twelve prime bases decide primality for n < 3.3e24; the
  // extra bases harden the test across the full 128-bit working range.
  for (uint128 a : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
    if (a % n == 0) continue;
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

namespace {

uint128 gcd_u128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Brent's improvement of Pollard rho with batched gcd.
uint128 pollard_brent(uint128 n, uint128 c) {
  auto f = [n, c](uint128 x) {
    uint128 y = mulmod(x, x, n) + c;
    if (y >= n) y -= n;
    return y;
  };
  uint128 x = 2, ys = 0, q = 1, g = 1;
  uint128 y = x;
  const unsigned batch = 128;
  uint128 r = 1;
  while (g == 1) {
    x = y;
    for (uint128 i = 0; i < r; ++i) y = f(y);
    uint128 k = 0;
    while (k < r && g == 1) {
      ys = y;
      uint128 lim = std::min<uint128>(batch, r - k);
      for (uint128 i = 0; i < lim; ++i) {
        y = f(y);
        uint128 diff = x > y ? x - y : y - x;
        q = mulmod(q, diff, n);
      }
      g = gcd_u128(q, n);
      k += batch;
    }
    r <<= 1;
  }
  if (g == n) {
    // Backtrack one at a time.
    do {
      ys = f(ys);
      uint128 diff = x > ys ? x - ys : ys - x;
      g = gcd_u128(diff, n);
    } while (g == 1);
  }
  return g;
}

}  // namespace

uint128 pollard_factor(uint128 n) {
  if (n % 2 == 0) return 2;
  for (uint128 c = 1;; ++c) {
    uint128 g = pollard_brent(n, c);
    if (g != n && g != 1) return g;
  }
}

std::vector<std::pair<uint128, unsigned>> prime_factorization(uint128 n) {
  if (n == 0) throw std::invalid_argument("prime_factorization: n must be >= 1");
  std::vector<std::pair<uint128, unsigned>> out;
  auto push = [&out](uint128 p) {
    for (auto& [q, e] : out) {
      if (q == p) {
        ++e;
        return;
      }
    }
    out.emplace_back(p, 1);
  };
  // Trial division up to 10^6 clears everything small.
  for (uint128 p = 2; p <= 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  }
  // Recursive rho on what remains.
  std::vector<uint128> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    uint128 m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      push(m);
      continue;
    }
    uint128 d = pollard_factor(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge duplicates produced by separate rho branches.
  std::vector<std::pair<uint128, unsigned>> merged;
  for (const auto& [p, e] : out) {
    if (!merged.empty() && merged.back().first == p)
      merged.back().second += e;
    else
      merged.emplace_back(p, e);
  }
  return merged;
}

std::string to_string_u128(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string_i128(int128 v) {
  if (v < 0) return "-" + to_string_u128(static_cast<uint128>(-(v + 1)) + 1);
  return to_string_u128(static_cast<uint128>(v));
}

int128 parse_i128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("parse_i128: empty string");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = (s[0] == '-');
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("parse_i128: no digits");
  uint128 acc = 0;
  const uint128 limit = (static_cast<uint128>(1) << 127) - (neg ? 0 : 1);
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_i128: invalid digit");
    uint128 digit = static_cast<uint128>(c - '0');
    if (acc > (limit - digit) / 10)
      throw std::invalid_argument("parse_i128: overflow");
    acc = acc * 10 + digit;
  }
  if (neg) return -static_cast<int128>(acc - 1) - 1;
  return static_cast<int128>(acc);
}

}  // namespace goodrot
