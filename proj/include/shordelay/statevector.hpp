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

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "shordelay/number_theory.hpp"
#include "shordelay/phase_model.hpp"

namespace shordelay {

/// Joint work (x) auxiliary state. Work index is major, auxiliary minor:
/// amplitude(j, x) lives at j * 2^Lprime + x.
struct JointState {
    int L = 0;
    int Lprime = 0;
    std::vector<std::complex<double>> amplitudes;

    JointState(int work_qubits, int aux_qubits);

    std::size_t aux_dim() const { return std::size_t{1} << Lprime; }
    std::size_t work_dim() const { return std::size_t{1} << L; }
    std::complex<double>& at(std::size_t j, std::size_t x) { return amplitudes[j * aux_dim() + x]; }
    const std::complex<double>& at(std::size_t j, std::size_t x) const {
        return amplitudes[j * aux_dim() + x];
    }
    double norm_squared() const;
};

/// How the mid-circuit auxiliary measurement is resolved.
class AuxOutcome {
   public:
    struct Forced {
        std::int64_t s;
    };
    struct BornSample {
        std::uint64_t seed;
    };

    static AuxOutcome forced(std::int64_t s) { return AuxOutcome(Forced{s}); }
    static AuxOutcome born(std::uint64_t seed) { return AuxOutcome(BornSample{seed}); }

    const std::variant<Forced, BornSample>& variant() const { return v_; }

   private:
    explicit AuxOutcome(std::variant<Forced, BornSample> v) : v_(v) {}
    std::variant<Forced, BornSample> v_;
};

struct PipelineResult {
    std::int64_t s_measured = 0;   // residue s in [0, r)
    std::int64_t aux_value = 0;    // a^s mod N, the observed auxiliary value
    double aux_probability = 0.0;  // Born probability of that outcome
    std::vector<std::complex<double>> work_amplitudes;  // after the final delay
    std::vector<double> work_distribution;              // |work_amplitudes|^2
    std::vector<double> stage_norms;                    // squared norm after each stage
};

namespace statevector {

inline constexpr int kMaxTotalQubits = 24;

/// In-place unitary Fourier transform, out[k] = q^{-1/2} sum_j in[j] e^{+2 pi i j k / q}.
/// Length must be a power of two.
void qft_inplace(std::span<std::complex<double>> amps);

std::vector<std::complex<double>> qft(std::span<const std::complex<double>> amps);

/// Full state-vector run of order finding with free evolution between the
/// blocks: Hadamards, delay tau1, modular-exponentiation entangler, delay tau2,
/// auxiliary measurement, delay tau3, Fourier transform, delay tau4.
PipelineResult run_pipeline(const FactoringInstance& inst, std::span<const double> deltas_work,
                            std::span<const double> deltas_aux, const DelaySchedule& schedule,
                            const AuxOutcome& aux_outcome,
                            PhaseConvention convention = PhaseConvention::kHammingWeight);

}  // namespace statevector
}  // namespace shordelay
