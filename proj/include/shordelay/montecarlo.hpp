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
#include <vector>

#include "shordelay/distribution.hpp"
#include "shordelay/number_theory.hpp"
#include "shordelay/phase_model.hpp"

namespace shordelay {

/// Grid for the inhomogeneous-splitting study: for every sigma/<Delta> ratio
/// and matching order n, P_e is averaged over `samples` Gaussian draws at
/// <Delta> tau = 2 n pi + offset for each offset.
struct EnsembleSweepSpec {
    FactoringInstance inst;
    double mean_delta = 1.0;
    std::vector<double> sigma_ratios;        // sigma / <Delta>, as fractions (0.005 = 0.5%)
    std::vector<int> matching_orders;        // n >= 0
    std::vector<double> tau_delta_offsets;   // radians; empty means {0}
    std::int64_t samples = 1000;
    std::uint64_t seed = 0;
    CorrectSetDefinition correct_set = CorrectSetDefinition::kNearestMultiple;
    Conditioning conditioning = Conditioning::averaged();
    PhaseConvention convention = PhaseConvention::kHammingWeight;
    unsigned workers = 0;  // 0 = hardware concurrency; never affects results

    void validate() const;
};

struct EnsembleRow {
    int n = 0;
    double sigma_ratio = 0.0;
    double tau_delta = 0.0;  // radians
    double pe_mean = 0.0;
    double pe_stderr = 0.0;
};

struct DecayRow {
    int L = 0;
    std::int64_t k_e = 0;
    double p_e = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

struct DecayResult {
    std::vector<DecayRow> rows;
    std::optional<LinearFit> fit;  // empty when fewer than two distinct L contribute
};

namespace montecarlo {

/// 81 offsets spanning [-0.2 pi, +0.2 pi].
std::vector<double> default_tau_offsets();

/// Rows ordered by n, then sigma ratio, then offset.
std::vector<EnsembleRow> ensemble_pe(const EnsembleSweepSpec& spec);

/// p_e(k_e) for each nearest-multiple correct outcome at fixed tau*Delta with
/// identical splittings, plus an OLS fit of ln p_e against L. Points with
/// p_e < 1e-300 are left out of the fit.
DecayResult decay_with_qubits(std::int64_t N, std::int64_t a, double tau_delta,
                              std::span<const int> L_range,
                              Conditioning conditioning = Conditioning::averaged(),
                              PhaseConvention convention = PhaseConvention::kHammingWeight);

/// Ordinary least squares y = slope * x + intercept. Empty if x has fewer than
/// two distinct values.
std::optional<LinearFit> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace montecarlo
}  // namespace shordelay
