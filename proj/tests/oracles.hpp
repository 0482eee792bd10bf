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

// Test-only reference computations, written independently of the library's
// closed-form and FFT paths.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "shordelay/number_theory.hpp"

namespace shordelay::testing {

/// Direct O(q^2) DFT with the e^{+2 pi i j k / q} kernel.
inline std::vector<std::complex<double>> direct_dft(const std::vector<std::complex<double>>& in) {
    const std::size_t q = in.size();
    std::vector<std::complex<double>> out(q);
    for (std::size_t k = 0; k < q; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < q; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % q) /
                                 static_cast<double>(q);
            acc += in[j] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc / std::sqrt(static_cast<double>(q));
    }
    return out;
}

/// P(k | s): collapse onto j = s (mod r), apply per-qubit dynamical phases
/// bit by bit, transform with the direct DFT.
inline std::vector<double> brute_conditional(const FactoringInstance& inst,
                                             const std::vector<double>& deltas, double tau,
                                             std::int64_t s, double phase_scale = 1.0) {
    const auto q = static_cast<std::size_t>(inst.q);
    std::vector<std::complex<double>> state(q, 0.0);
    std::size_t members = 0;
    for (std::size_t j = static_cast<std::size_t>(s); j < q; j += static_cast<std::size_t>(inst.r)) {
        ++members;
    }
    for (std::size_t j = static_cast<std::size_t>(s); j < q; j += static_cast<std::size_t>(inst.r)) {
        double phase = 0.0;
        for (std::size_t b = 0; b < deltas.size(); ++b) {
            if ((j >> b) & 1u) phase += deltas[b] * tau;
        }
        state[j] = std::polar(1.0 / std::sqrt(static_cast<double>(members)), -phase_scale * phase);
    }
    const auto out = direct_dft(state);
    std::vector<double> p(q);
    for (std::size_t k = 0; k < q; ++k) p[k] = std::norm(out[k]);
    return p;
}

/// Born-weighted average of brute_conditional over the residues.
inline std::vector<double> brute_averaged(const FactoringInstance& inst,
                                          const std::vector<double>& deltas, double tau) {
    std::vector<double> avg(static_cast<std::size_t>(inst.q), 0.0);
    for (std::int64_t s = 0; s < inst.r && s < inst.q; ++s) {
        std::int64_t count = 0;
        for (std::int64_t j = s; j < inst.q; j += inst.r) ++count;
        const auto p = brute_conditional(inst, deltas, tau, s);
        for (std::size_t k = 0; k < avg.size(); ++k) {
            avg[k] += static_cast<double>(count) / static_cast<double>(inst.q) * p[k];
        }
    }
    return avg;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

/// Random valid instance with N in [3, max_N] and a work register of up to
/// max_L qubits.
inline FactoringInstance random_instance(std::mt19937_64& rng, std::int64_t max_N = 33,
                                         int max_L = 9) {
    std::uniform_int_distribution<std::int64_t> pick_N(3, max_N);
    while (true) {
        const std::int64_t N = pick_N(rng);
        std::vector<std::int64_t> bases;
        for (std::int64_t a = 2; a < N; ++a) {
            if (number_theory::gcd(a, N) == 1) bases.push_back(a);
        }
        if (bases.empty()) continue;
        const std::int64_t a = bases[rng() % bases.size()];
        const int L = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_L));
        const int Lprime = std::bit_width(static_cast<std::uint64_t>(N));
        return FactoringInstance::make(N, a, L, Lprime);
    }
}

inline std::vector<double> random_deltas(std::mt19937_64& rng, int L, double lo = 0.5,
                                         double hi = 1.5) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> out(static_cast<std::size_t>(L));
    for (auto& x : out) x = d(rng);
    return out;
}

}  // namespace shordelay::testing
