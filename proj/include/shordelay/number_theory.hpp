// Copyright 2026 The shordelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace shordelay {

/// Problem definition plus register sizing for one order-finding run.
///
/// The work register has L qubits (dimension q = 2^L); the auxiliary register
/// has Lprime qubits and must be able to hold every residue mod N.
struct FactoringInstance {
    std::int64_t N = 0;
    std::int64_t a = 0;
    int L = 0;
    int Lprime = 0;
    std::int64_t q = 0;
    std::int64_t r = 0;

    /// Validates (N, a), derives q and r. Pass L or Lprime <= 0 to use
    /// default_register_sizes for that register.
    static FactoringInstance make(std::int64_t N, std::int64_t a, int L = 0, int Lprime = 0);
};

struct RegisterSizes {
    int L = 0;
    int Lprime = 0;
};

namespace number_theory {

std::int64_t gcd(std::int64_t x, std::int64_t y);

/// a^x mod N by square-and-multiply. Negative a is reduced first.
std::int64_t mod_pow(std::int64_t a, std::int64_t x, std::int64_t N);

/// Least r >= 1 with a^r = 1 (mod N). Throws InvalidArgument unless gcd(a, N) = 1.
std::int64_t multiplicative_order(std::int64_t a, std::int64_t N);

/// Smallest L with N^2 < 2^L (< 2N^2), and the L' with 2^(L'-1) < N < 2^L'.
/// Powers of two are rejected since the second inequality is strict.
RegisterSizes default_register_sizes(std::int64_t N);

/// Denominators (<= N, ascending, deduplicated) of the continued-fraction
/// convergents of k/q. Empty for k = 0.
std::vector<std::int64_t> continued_fraction_order_candidates(std::int64_t k, std::int64_t q,
                                                              std::int64_t N);

/// 2^L with overflow checking (L in [0, 62]).
std::int64_t pow2(int L);

/// Number of j in [0, q) with j = s (mod r), i.e. w_s + 1 where
/// w_s = floor((q - s - 1) / r). Zero when s >= q.
std::int64_t residue_count(std::int64_t q, std::int64_t r, std::int64_t s);

}  // namespace number_theory
}  // namespace shordelay
