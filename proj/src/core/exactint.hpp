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
#include <string_view>
#include <vector>

namespace goodrot {

using int128 = __int128;
using uint128 = unsigned __int128;

/// Largest integer r with r*r <= n, computed exactly.
uint128 isqrt(uint128 n);

/// (a * b) mod m for any m < 2^127. Uses the native 128-bit product when m
/// fits in 64 bits and shift-and-add reduction otherwise.
uint128 mulmod(uint128 a, uint128 b, uint128 m);

/// (base ^ exp) mod m, m < 2^127.
uint128 powmod(uint128 base, uint128 exp, uint128 m);

/// Deterministic Miller-Rabin over a fixed base set covering the range of
/// interest (n < 2^127). Total for n >= 0.
bool is_prime(uint128 n);

/// One nontrivial factor of composite n (Brent's cycle variant of Pollard
/// rho, deterministic retry sequence). Precondition: n composite, not prime.
uint128 pollard_factor(uint128 n);

/// Full prime factorization, ascending primes. n >= 1; n == 1 yields {}.
std::vector<std::pair<uint128, unsigned>> prime_factorization(uint128 n);

std::string to_string_u128(uint128 v);
std::string to_string_i128(int128 v);

/// Parses a decimal string (optional leading '-') into int128.
/// Throws std::invalid_argument on malformed input or overflow.
int128 parse_i128(std::string_view s);

}  // namespace goodrot
