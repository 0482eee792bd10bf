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

#include "shordelay/number_theory.hpp"

#include <string>

#include "shordelay/error.hpp"

namespace shordelay {
namespace number_theory {

std::int64_t gcd(std::int64_t x, std::int64_t y) {
    if (x < 0) x = -x;
    if (y < 0) y = -y;
    while (y != 0) {
        std::int64_t t = x % y;
        x = y;
        y = t;
    }
    return x;
}

std::int64_t mod_pow(std::int64_t a, std::int64_t x, std::int64_t N) {
    if (N < 2) {
        throw InvalidArgument("mod_pow: modulus must be >= 2, got " + std::to_string(N));
    }
    if (x < 0) {
        throw InvalidArgument("mod_pow: exponent must be >= 0");
    }
    using u128 = unsigned __int128;
    std::int64_t base = a % N;
    if (base < 0) base += N;
    u128 result = 1;
    u128 b = static_cast<u128>(base);
    const u128 m = static_cast<u128>(N);
    while (x > 0) {
        if (x & 1) result = (result * b) % m;
        b = (b * b) % m;
        x >>= 1;
    }
    return static_cast<std::int64_t>(result % m);
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t N) {
    if (N < 2) {
        throw InvalidArgument("multiplicative_order: modulus must be >= 2");
    }
    if (gcd(a, N) != 1) {
        throw InvalidArgument("multiplicative_order: gcd(" + std::to_string(a) + ", " +
                              std::to_string(N) + ") != 1, order undefined");
    }
    std::int64_t base = a % N;
    if (base < 0) base += N;
    std::int64_t value = base % N;
    for (std::int64_t r = 1; r <= N; ++r) {
        if (value == 1 % N) return r;
        value = static_cast<std::int64_t>((static_cast<unsigned __int128>(value) * base) % N);
    }
    // Unreachable for coprime a: the order divides phi(N) < N.
    throw ComputationError("multiplicative_order: no order found");
}

std::int64_t pow2(int L) {
    if (L < 0 || L > 62) {
        throw InvalidArgument("register size must be in [0, 62], got " + std::to_string(L));
    }
    return std::int64_t{1} << L;
}

RegisterSizes default_register_sizes(std::int64_t N) {
    if (N < 3) {
        throw InvalidArgument("default_register_sizes: N must be >= 3");
    }
    if ((N & (N - 1)) == 0) {
        throw InvalidArgument("default_register_sizes: N = " + std::to_string(N) +
                              " is a power of two; 2^(L'-1) < N < 2^L' has no solution");
    }
    if (N > (std::int64_t{1} << 30)) {
        throw InvalidArgument("default_register_sizes: N too large for 62-bit work register");
    }
    const std::int64_t n2 = N * N;
    RegisterSizes sizes;
    while ((std::int64_t{1} << sizes.L) <= n2) ++sizes.L;
    // The smallest such L always satisfies 2^L < 2N^2; checked anyway.
    if ((std::int64_t{1} << sizes.L) >= 2 * n2) {
        throw ComputationError("default_register_sizes: N^2 < 2^L < 2N^2 violated");
    }
    while ((std::int64_t{1} << sizes.Lprime) <= N) ++sizes.Lprime;
    return sizes;
}

std::vector<std::int64_t> continued_fraction_order_candidates(std::int64_t k, std::int64_t q,
                                                              std::int64_t N) {
    if (q < 1 || k < 0 || k >= q) {
        throw InvalidArgument("continued_fraction_order_candidates: need 0 <= k < q");
    }
    std::vector<std::int64_t> out;
    if (k == 0) return out;

    // k/q = [0; c_1, c_2, ...]; the expansion of q/k supplies c_1, c_2, ...
    // Denominators follow d_n = c_n d_{n-1} + d_{n-2} from the convergent 0/1.
    std::int64_t num = q;
    std::int64_t den = k;
    std::int64_t d_prev = 0;
    std::int64_t d_cur = 1;
    if (d_cur <= N) out.push_back(d_cur);
    while (den != 0) {
        const std::int64_t c = num / den;
        const std::int64_t rem = num % den;
        num = den;
        den = rem;
        const std::int64_t d_next = c * d_cur + d_prev;
        d_prev = d_cur;
        d_cur = d_next;
        if (d_cur > N) break;
        if (out.empty() || out.back() != d_cur) out.push_back(d_cur);
    }
    return out;
}

std::int64_t residue_count(std::int64_t q, std::int64_t r, std::int64_t s) {
    if (s >= q) return 0;
    return (q - s - 1) / r + 1;
}

}  // namespace number_theory

FactoringInstance FactoringInstance::make(std::int64_t N, std::int64_t a, int L, int Lprime) {
    if (N < 2) {
        throw InvalidArgument("instance: N must be >= 2");
    }
    if (a <= 1 || a >= N) {
        throw InvalidArgument("instance: base a must satisfy 1 < a < N (got a=" +
                              std::to_string(a) + ", N=" + std::to_string(N) + ")");
    }
    if (number_theory::gcd(a, N) != 1) {
        throw InvalidArgument("instance: gcd(a, N) != 1; a shares a factor with N");
    }
    FactoringInstance inst;
    inst.N = N;
    inst.a = a;
    if (L <= 0 || Lprime <= 0) {
        const RegisterSizes d = number_theory::default_register_sizes(N);
        if (L <= 0) L = d.L;
        if (Lprime <= 0) Lprime = d.Lprime;
    }
    inst.L = L;
    inst.Lprime = Lprime;
    inst.q = number_theory::pow2(L);
    if (number_theory::pow2(Lprime) < N) {
        throw InvalidArgument("instance: auxiliary register of " + std::to_string(Lprime) +
                              " qubits cannot hold residues mod " + std::to_string(N));
    }
    inst.r = number_theory::multiplicative_order(a, N);
    return inst;
}

}  // namespace shordelay
