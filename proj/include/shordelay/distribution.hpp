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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shordelay/number_theory.hpp"
#include "shordelay/phase_model.hpp"

namespace shordelay {

/// Which auxiliary-register outcome the work distribution is conditioned on.
/// Averaged weights each residue s by its Born probability (w_s + 1) / q.
class Conditioning {
   public:
    static Conditioning averaged() { return Conditioning(std::nullopt); }
    static Conditioning fixed_residue(std::int64_t s) { return Conditioning(s); }

    bool is_averaged() const { return !residue_; }
    std::int64_t residue() const { return residue_.value(); }

    friend bool operator==(const Conditioning&, const Conditioning&) = default;

   private:
    explicit Conditioning(std::optional<std::int64_t> s) : residue_(s) {}
    std::optional<std::int64_t> residue_;
};

struct OutcomeDistribution {
    std::int64_t q = 0;
    std::vector<double> probs;
    Conditioning conditioning = Conditioning::averaged();

    double total() const;
};

enum class CorrectSetDefinition { kNearestMultiple, kContinuedFraction };

struct CorrectSet {
    std::vector<std::int64_t> kes;
    CorrectSetDefinition definition = CorrectSetDefinition::kNearestMultiple;
};

struct SuccessProbabilities {
    std::vector<std::pair<std::int64_t, double>> per_k;  // (k_e, p_e(k_e)), ascending k_e
    double total = 0.0;                                  // P_e
};

namespace distribution {

/// Largest work register the closed form will tabulate in full.
inline constexpr int kMaxDistributionQubits = 22;

/// Final work-register measurement distribution after a total delay tau,
/// evaluated in closed form over the periodic states l*r + s.
OutcomeDistribution outcome_distribution(
    const FactoringInstance& inst, std::span<const double> deltas, double tau,
    Conditioning conditioning = Conditioning::averaged(),
    PhaseConvention convention = PhaseConvention::kHammingWeight);

/// Same quantity as outcome_distribution but only at the listed outcomes.
/// Values are bitwise identical to the corresponding full-vector entries.
std::vector<double> outcome_probabilities(
    const FactoringInstance& inst, std::span<const double> deltas, double tau,
    std::span<const std::int64_t> ks, Conditioning conditioning = Conditioning::averaged(),
    PhaseConvention convention = PhaseConvention::kHammingWeight);

CorrectSet correct_set(const FactoringInstance& inst,
                       CorrectSetDefinition definition = CorrectSetDefinition::kNearestMultiple);

SuccessProbabilities success_probabilities(const OutcomeDistribution& dist, const CorrectSet& cset);

/// P_e computed directly from the correct outcomes (no full vector).
double success_probability(const FactoringInstance& inst, std::span<const double> deltas,
                           double tau, const CorrectSet& cset,
                           Conditioning conditioning = Conditioning::averaged(),
                           PhaseConvention convention = PhaseConvention::kHammingWeight);

/// Probability of each of the two correct outcomes for N = 4, a = 3:
/// (1 + cos(tau * delta)) / 4.
double analytic_n4(double tau, double delta);

/// round(j*q/r) with half-way cases rounded down.
std::int64_t nearest_multiple(std::int64_t j, std::int64_t q, std::int64_t r);

}  // namespace distribution
}  // namespace shordelay
