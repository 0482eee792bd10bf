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
#include <span>
#include <variant>
#include <vector>

namespace shordelay {

/// How a basis state's dynamical phase is derived from the qubit splittings.
///
/// kHammingWeight: phi(j) = sum_k bit_k(j) * Delta_k * tau, the physical
/// energy of the excited qubits relative to the all-ground state.
/// kExcitationImbalance: the (excited - ground) count form, whose
/// j-dependent part is twice the Hamming-weight phase. Kept only to
/// reproduce the alternative reading; it matches at tau*Delta = n*pi.
enum class PhaseConvention { kHammingWeight, kExcitationImbalance };

inline constexpr double kDefaultMatchTolerance = 1e-9;

/// Idle intervals between the unitary blocks. Only tau1 + tau2 + tau3 reaches
/// the outcome statistics; tau4 follows the Fourier transform.
struct DelaySchedule {
    double tau1 = 0.0;
    double tau2 = 0.0;
    double tau3 = 0.0;
    double tau4 = 0.0;

    double total() const { return tau1 + tau2 + tau3; }
    void validate() const;
};

struct GaussianEnsemble {
    double mean = 1.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Energy splitting assignment for a register.
class SplittingModel {
   public:
    struct Identical {
        double delta = 1.0;
    };
    struct PerQubit {
        std::vector<double> deltas;
    };

    static SplittingModel identical(double delta);
    static SplittingModel per_qubit(std::vector<double> deltas);
    static SplittingModel gaussian(double mean, double sigma, std::uint64_t seed);

    /// Per-qubit splittings for an L-qubit register. Gaussian models draw
    /// sample `sample_index` of the ensemble.
    std::vector<double> resolve(int L, std::uint64_t sample_index = 0) const;

    /// The splitting used to convert tau*Delta angles into times: delta for
    /// Identical, the mean for Gaussian, the arithmetic mean for PerQubit.
    double reference_delta() const;

    const std::variant<Identical, PerQubit, GaussianEnsemble>& variant() const { return model_; }

   private:
    explicit SplittingModel(std::variant<Identical, PerQubit, GaussianEnsemble> m)
        : model_(std::move(m)) {}
    std::variant<Identical, PerQubit, GaussianEnsemble> model_;
};

namespace phase_model {

/// Dynamical phase (radians) accrued by basis state |j> over time tau; the
/// amplitude picks up exp(-i * phi). j must fit in deltas.size() bits.
double state_phase(std::uint64_t j, std::span<const double> deltas, double tau,
                   PhaseConvention convention = PhaseConvention::kHammingWeight);

/// True iff tau*delta lies within tol of some 2*n*pi, n >= 0.
bool is_phase_matched(double delta, double tau, double tol = kDefaultMatchTolerance);

/// is_phase_matched for every (delta_k, tau_k) pair.
bool per_qubit_phase_matched(std::span<const double> deltas, std::span<const double> taus,
                             double tol = kDefaultMatchTolerance);

/// L Gaussian splittings, deterministic in (ensemble.seed, sample_index).
std::vector<double> sample_splittings(const GaussianEnsemble& ensemble, int L,
                                      std::uint64_t sample_index = 0);

/// Standard normal deviate keyed by (seed, sample, qubit): splitmix64 hashing
/// into a Box-Muller transform. Independent of call order.
double keyed_standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint64_t qubit);

}  // namespace phase_model
}  // namespace shordelay
