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

#include "shordelay/statevector.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "shordelay/error.hpp"

namespace shordelay {

using cplx = std::complex<double>;

JointState::JointState(int work_qubits, int aux_qubits) : L(work_qubits), Lprime(aux_qubits) {
    if (L < 0 || Lprime < 0 || L + Lprime > statevector::kMaxTotalQubits) {
        throw SizeLimitExceeded("joint state: " + std::to_string(L) + " + " +
                                std::to_string(Lprime) + " qubits exceeds the limit of " +
                                std::to_string(statevector::kMaxTotalQubits));
    }
    amplitudes.assign(std::size_t{1} << (L + Lprime), cplx{0.0, 0.0});
}

double JointState::norm_squared() const {
    // Kahan summation; w * 2^Lprime can reach 16M terms.
    double sum = 0.0;
    double carry = 0.0;
    for (const cplx& a : amplitudes) {
        const double y = std::norm(a) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

namespace statevector {

void qft_inplace(std::span<cplx> amps) {
    const std::size_t n = amps.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw InvalidArgument("qft: length " + std::to_string(n) + " is not a power of two");
    }
    // Bit-reversal permutation, then iterative radix-2 butterflies.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(amps[i], amps[j]);
    }
    std::vector<cplx> twiddle;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        twiddle.resize(half);
        for (std::size_t m = 0; m < half; ++m) {
            twiddle[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) /
                                             static_cast<double>(len));
        }
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t m = 0; m < half; ++m) {
                const cplx u = amps[base + m];
                const cplx v = amps[base + m + half] * twiddle[m];
                amps[base + m] = u + v;
                amps[base + m + half] = u - v;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cplx& a : amps) a *= scale;
}

std::vector<cplx> qft(std::span<const cplx> amps) {
    std::vector<cplx> out(amps.begin(), amps.end());
    qft_inplace(out);
    return out;
}

namespace {

std::vector<cplx> evolution_factors(std::size_t dim, std::span<const double> deltas, double tau,
                                    PhaseConvention convention) {
    std::vector<cplx> f(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        f[j] = std::polar(1.0, -phase_model::state_phase(j, deltas, tau, convention));
    }
    return f;
}

void free_evolution(JointState& state, std::span<const double> deltas_work,
                    std::span<const double> deltas_aux, double tau, PhaseConvention convention) {
    if (tau == 0.0) return;
    const auto fw = evolution_factors(state.work_dim(), deltas_work, tau, convention);
    const auto fa = evolution_factors(state.aux_dim(), deltas_aux, tau, convention);
    for (std::size_t j = 0; j < state.work_dim(); ++j) {
        for (std::size_t x = 0; x < state.aux_dim(); ++x) state.at(j, x) *= fw[j] * fa[x];
    }
}

double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

PipelineResult run_pipeline(const FactoringInstance& inst, std::span<const double> deltas_work,
                            std::span<const double> deltas_aux, const DelaySchedule& schedule,
                            const AuxOutcome& aux_outcome, PhaseConvention convention) {
    if (deltas_work.size() != static_cast<std::size_t>(inst.L)) {
        throw InvalidArgument("run_pipeline: work splittings must have L=" +
                              std::to_string(inst.L) + " entries");
    }
    if (deltas_aux.size() != static_cast<std::size_t>(inst.Lprime)) {
        throw InvalidArgument("run_pipeline: auxiliary splittings must have L'=" +
                              std::to_string(inst.Lprime) + " entries");
    }
    schedule.validate();
    JointState state(inst.L, inst.Lprime);
    PipelineResult result;
    const std::size_t q = state.work_dim();
    const std::size_t A = state.aux_dim();

    // (i) Hadamard layer on the work register; auxiliary in |0>.
    const double amp = 1.0 / std::sqrt(static_cast<double>(q));
    for (std::size_t j = 0; j < q; ++j) state.at(j, 0) = amp;
    result.stage_norms.push_back(state.norm_squared());

    // (ii) first delay.
    free_evolution(state, deltas_work, deltas_aux, schedule.tau1, convention);
    result.stage_norms.push_back(state.norm_squared());

    // (iii) entangler |j>|0> -> |j>|a^j mod N>. Only the |0> aux input is populated.
    {
        std::int64_t f = 1 % inst.N;
        for (std::size_t j = 0; j < q; ++j) {
            const auto x = static_cast<std::size_t>(f);
            if (x != 0) {
                state.at(j, x) = state.at(j, 0);
                state.at(j, 0) = 0.0;
            }
            f = static_cast<std::int64_t>((static_cast<unsigned __int128>(f) * inst.a) % inst.N);
        }
    }
    result.stage_norms.push_back(state.norm_squared());

    // (iv) second delay.
    free_evolution(state, deltas_work, deltas_aux, schedule.tau2, convention);
    result.stage_norms.push_back(state.norm_squared());

    // (v) projective measurement of the auxiliary register.
    std::vector<double> aux_probs(A, 0.0);
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t x = 0; x < A; ++x) aux_probs[x] += std::norm(state.at(j, x));
    }
    std::size_t observed = 0;
    if (const auto* forced = std::get_if<AuxOutcome::Forced>(&aux_outcome.variant())) {
        if (forced->s < 0 || forced->s >= inst.r) {
            throw InvalidArgument("run_pipeline: forced residue s=" + std::to_string(forced->s) +
                                  " outside [0, r=" + std::to_string(inst.r) + ")");
        }
        observed = static_cast<std::size_t>(number_theory::mod_pow(inst.a, forced->s, inst.N));
        if (aux_probs[observed] <= 0.0) {
            throw ComputationError("run_pipeline: forced residue s=" + std::to_string(forced->s) +
                                   " has zero probability");
        }
    } else {
        std::mt19937_64 rng(std::get<AuxOutcome::BornSample>(aux_outcome.variant()).seed);
        const double u = uniform53(rng);
        double cumulative = 0.0;
        observed = A;
        std::size_t last_supported = 0;
        for (std::size_t x = 0; x < A; ++x) {
            if (aux_probs[x] <= 0.0) continue;
            last_supported = x;
            cumulative += aux_probs[x];
            if (u < cumulative) {
                observed = x;
                break;
            }
        }
        if (observed == A) observed = last_supported;  // u within rounding of 1
    }
    result.aux_value = static_cast<std::int64_t>(observed);
    result.aux_probability = aux_probs[observed];
    result.s_measured = -1;
    for (std::int64_t s = 0; s < inst.r; ++s) {
        if (number_theory::mod_pow(inst.a, s, inst.N) == result.aux_value) {
            result.s_measured = s;
            break;
        }
    }
    if (result.s_measured < 0) {
        throw ComputationError("run_pipeline: observed auxiliary value is not a power of a");
    }
    {
        double kept = 0.0;
        double carry = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
            for (std::size_t x = 0; x < A; ++x) {
                if (x != observed) {
                    state.at(j, x) = 0.0;
                    continue;
                }
                const double y = std::norm(state.at(j, x)) - carry;
                const double t = kept + y;
                carry = (t - kept) - y;
                kept = t;
            }
        }
        const double scale = 1.0 / std::sqrt(kept);
        for (std::size_t j = 0; j < q; ++j) state.at(j, observed) *= scale;
    }
    result.stage_norms.push_back(state.norm_squared());

    // (vi) third delay. From here on only the observed aux column is populated,
    // so any auxiliary phase is a global factor.
    free_evolution(state, deltas_work, deltas_aux, schedule.tau3, convention);
    result.stage_norms.push_back(state.norm_squared());

    // (vii) Fourier transform on the work register, column by column.
    {
        std::vector<cplx> column(q);
        for (std::size_t x = 0; x < A; ++x) {
            bool populated = false;
            for (std::size_t j = 0; j < q; ++j) {
                column[j] = state.at(j, x);
                populated = populated || column[j] != cplx{0.0, 0.0};
            }
            if (!populated) continue;
            qft_inplace(column);
            for (std::size_t j = 0; j < q; ++j) state.at(j, x) = column[j];
        }
    }
    result.stage_norms.push_back(state.norm_squared());

    // (viii) final delay.
    free_evolution(state, deltas_work, deltas_aux, schedule.tau4, convention);
    result.stage_norms.push_back(state.norm_squared());

    // (ix) work-register statistics.
    result.work_amplitudes.resize(q);
    result.work_distribution.resize(q);
    for (std::size_t k = 0; k < q; ++k) {
        result.work_amplitudes[k] = state.at(k, observed);
        result.work_distribution[k] = std::norm(result.work_amplitudes[k]);
    }
    return result;
}

}  // namespace statevector
}  // namespace shordelay
