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

#include "shordelay/phase_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "shordelay/error.hpp"

namespace shordelay {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw InvalidArgument(std::string(what) + " must be finite");
    }
}

}  // namespace

void DelaySchedule::validate() const {
    for (double t : {tau1, tau2, tau3, tau4}) {
        if (!std::isfinite(t) || t < 0.0) {
            throw InvalidArgument("delay schedule: every delay must be finite and >= 0");
        }
    }
}

SplittingModel SplittingModel::identical(double delta) {
    require_finite(delta, "splitting");
    return SplittingModel(Identical{delta});
}

SplittingModel SplittingModel::per_qubit(std::vector<double> deltas) {
    for (double d : deltas) require_finite(d, "splitting");
    return SplittingModel(PerQubit{std::move(deltas)});
}

SplittingModel SplittingModel::gaussian(double mean, double sigma, std::uint64_t seed) {
    require_finite(mean, "ensemble mean");
    require_finite(sigma, "ensemble sigma");
    if (sigma < 0.0) throw InvalidArgument("ensemble sigma must be >= 0");
    return SplittingModel(GaussianEnsemble{mean, sigma, seed});
}

std::vector<double> SplittingModel::resolve(int L, std::uint64_t sample_index) const {
    if (L < 0) throw InvalidArgument("register size must be >= 0");
    if (const auto* id = std::get_if<Identical>(&model_)) {
        return std::vector<double>(static_cast<std::size_t>(L), id->delta);
    }
    if (const auto* pq = std::get_if<PerQubit>(&model_)) {
        if (pq->deltas.size() != static_cast<std::size_t>(L)) {
            throw InvalidArgument("per-qubit splittings: got " + std::to_string(pq->deltas.size()) +
                                  " values for a " + std::to_string(L) + "-qubit register");
        }
        return pq->deltas;
    }
    return phase_model::sample_splittings(std::get<GaussianEnsemble>(model_), L, sample_index);
}

double SplittingModel::reference_delta() const {
    if (const auto* id = std::get_if<Identical>(&model_)) return id->delta;
    if (const auto* pq = std::get_if<PerQubit>(&model_)) {
        if (pq->deltas.empty()) throw InvalidArgument("per-qubit splittings: empty list");
        return std::accumulate(pq->deltas.begin(), pq->deltas.end(), 0.0) /
               static_cast<double>(pq->deltas.size());
    }
    return std::get<GaussianEnsemble>(model_).mean;
}

namespace phase_model {

double state_phase(std::uint64_t j, std::span<const double> deltas, double tau,
                   PhaseConvention convention) {
    if (deltas.size() < 64 && (j >> deltas.size()) != 0) {
        throw InvalidArgument("state_phase: basis index " + std::to_string(j) +
                              " does not fit in " + std::to_string(deltas.size()) + " qubits");
    }
    double energy = 0.0;
    for (std::uint64_t bits = j; bits != 0; bits &= bits - 1) {
        energy += deltas[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    const double scale = convention == PhaseConvention::kHammingWeight ? 1.0 : 2.0;
    return scale * energy * tau;
}

bool is_phase_matched(double delta, double tau, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("is_phase_matched: tol must be > 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double angle = tau * delta;
    if (!std::isfinite(angle)) return false;
    if (angle <= 0.0) return -angle < tol;
    const double n = std::nearbyint(angle / two_pi);
    return std::fabs(angle - n * two_pi) < tol;
}

bool per_qubit_phase_matched(std::span<const double> deltas, std::span<const double> taus,
                             double tol) {
    if (deltas.size() != taus.size()) {
        throw InvalidArgument("per_qubit_phase_matched: " + std::to_string(deltas.size()) +
                              " splittings vs " + std::to_string(taus.size()) + " delays");
    }
    if (!(tol > 0.0)) throw InvalidArgument("per_qubit_phase_matched: tol must be > 0");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        if (!is_phase_matched(deltas[k], taus[k], tol)) return false;
    }
    return true;
}

double keyed_standard_normal(std::uint64_t seed, std::uint64_t sample, std::uint64_t qubit) {
    const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ qubit);
    constexpr double inv53 = 1.0 / 9007199254740992.0;  // 2^-53
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 = static_cast<double>((splitmix64(key) >> 11) + 1) * inv53;
    const double u2 = static_cast<double>(splitmix64(key ^ 0xd1b54a32d192ed03ULL) >> 11) * inv53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_splittings(const GaussianEnsemble& ensemble, int L,
                                      std::uint64_t sample_index) {
    if (L < 1) throw InvalidArgument("sample_splittings: L must be >= 1");
    if (!(ensemble.sigma >= 0.0)) throw InvalidArgument("sample_splittings: sigma must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(L), ensemble.mean);
    if (ensemble.sigma == 0.0) return out;
    for (int k = 0; k < L; ++k) {
        out[static_cast<std::size_t>(k)] +=
            ensemble.sigma *
            keyed_standard_normal(ensemble.seed, sample_index, static_cast<std::uint64_t>(k));
    }
    return out;
}

}  // namespace phase_model
}  // namespace shordelay
