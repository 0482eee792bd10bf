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

#include "shordelay/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "shordelay/error.hpp"
#include "shordelay/parallel.hpp"

namespace shordelay {

double OutcomeDistribution::total() const {
    double sum = 0.0;
    for (double p : probs) sum += p;
    return sum;
}

namespace distribution {

namespace {

using cplx = std::complex<double>;

cplx pairwise_sum(std::span<const cplx> x) {
    if (x.size() <= 8) {
        cplx acc{0.0, 0.0};
        for (const cplx& v : x) acc += v;
        return acc;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

// exp(-i phi(l r + s) tau) for l = 0..w, plus the Born weight (w + 1) / q.
struct Residue {
    std::int64_t s = 0;
    std::int64_t count = 0;
    double weight = 0.0;
    std::vector<cplx> delay_phases;
};

std::vector<Residue> prepare_residues(const FactoringInstance& inst,
                                      std::span<const double> deltas, double tau,
                                      const Conditioning& conditioning,
                                      PhaseConvention convention) {
    std::vector<std::int64_t> residues;
    if (conditioning.is_averaged()) {
        for (std::int64_t s = 0; s < inst.r; ++s) {
            if (number_theory::residue_count(inst.q, inst.r, s) > 0) residues.push_back(s);
        }
    } else {
        const std::int64_t s = conditioning.residue();
        if (s < 0 || s >= inst.r) {
            throw InvalidArgument("conditioning residue s=" + std::to_string(s) +
                                  " outside [0, r=" + std::to_string(inst.r) + ")");
        }
        if (number_theory::residue_count(inst.q, inst.r, s) == 0) {
            throw ComputationError("residue s=" + std::to_string(s) +
                                   " has zero probability (q < r)");
        }
        residues.push_back(s);
    }
    std::vector<Residue> out;
    out.reserve(residues.size());
    for (std::int64_t s : residues) {
        Residue res;
        res.s = s;
        res.count = number_theory::residue_count(inst.q, inst.r, s);
        res.weight = conditioning.is_averaged()
                         ? static_cast<double>(res.count) / static_cast<double>(inst.q)
                         : 1.0;
        res.delay_phases.resize(static_cast<std::size_t>(res.count));
        for (std::int64_t l = 0; l < res.count; ++l) {
            const auto j = static_cast<std::uint64_t>(l * inst.r + s);
            res.delay_phases[static_cast<std::size_t>(l)] =
                std::polar(1.0, -phase_model::state_phase(j, deltas, tau, convention));
        }
        out.push_back(std::move(res));
    }
    return out;
}

class Evaluator {
   public:
    Evaluator(const FactoringInstance& inst, std::span<const double> deltas, double tau,
              const Conditioning& conditioning, PhaseConvention convention)
        : inst_(inst) {
        if (deltas.size() != static_cast<std::size_t>(inst.L)) {
            throw InvalidArgument("outcome distribution: " + std::to_string(deltas.size()) +
                                  " splittings for a " + std::to_string(inst.L) +
                                  "-qubit work register");
        }
        if (!std::isfinite(tau) || tau < 0.0) {
            throw InvalidArgument("outcome distribution: total delay must be finite and >= 0");
        }
        if (inst.L > kMaxDistributionQubits) {
            throw SizeLimitExceeded("outcome distribution: L=" + std::to_string(inst.L) +
                                    " exceeds " + std::to_string(kMaxDistributionQubits));
        }
        residues_ = prepare_residues(inst, deltas, tau, conditioning, convention);
        roots_.resize(static_cast<std::size_t>(inst.q));
        const double step = 2.0 * std::numbers::pi / static_cast<double>(inst.q);
        for (std::int64_t m = 0; m < inst.q; ++m) {
            roots_[static_cast<std::size_t>(m)] = std::polar(1.0, step * static_cast<double>(m));
        }
    }

    // P(k) = sum_s weight_s * |sum_l e^{-i phi_l} e^{2 pi i l k r / q}|^2 / (q (w_s + 1)).
    double probability(std::int64_t k, std::vector<cplx>& scratch) const {
        const std::int64_t q = inst_.q;
        const std::int64_t rk = static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(inst_.r) * static_cast<unsigned __int128>(k)) %
            static_cast<unsigned __int128>(q));
        double p = 0.0;
        for (const Residue& res : residues_) {
            scratch.resize(res.delay_phases.size());
            std::int64_t m = 0;
            for (std::size_t l = 0; l < res.delay_phases.size(); ++l) {
                scratch[l] = res.delay_phases[l] * roots_[static_cast<std::size_t>(m)];
                m += rk;
                if (m >= q) m -= q;
            }
            const double mag = std::norm(pairwise_sum(scratch));
            const double conditional =
                mag / (static_cast<double>(q) * static_cast<double>(res.count));
            p += res.weight * conditional;
        }
        return p;
    }

   private:
    const FactoringInstance& inst_;
    std::vector<Residue> residues_;
    std::vector<cplx> roots_;
};

}  // namespace

OutcomeDistribution outcome_distribution(const FactoringInstance& inst,
                                         std::span<const double> deltas, double tau,
                                         Conditioning conditioning, PhaseConvention convention) {
    const Evaluator eval(inst, deltas, tau, conditioning, convention);
    OutcomeDistribution dist;
    dist.q = inst.q;
    dist.conditioning = conditioning;
    dist.probs.resize(static_cast<std::size_t>(inst.q));
    constexpr std::size_t kChunk = 256;
    const std::size_t chunks = (dist.probs.size() + kChunk - 1) / kChunk;
    detail::parallel_for(chunks, [&](std::size_t c) {
        std::vector<cplx> scratch;
        const std::size_t end = std::min(dist.probs.size(), (c + 1) * kChunk);
        for (std::size_t k = c * kChunk; k < end; ++k) {
            dist.probs[k] = eval.probability(static_cast<std::int64_t>(k), scratch);
        }
    });
    return dist;
}

std::vector<double> outcome_probabilities(const FactoringInstance& inst,
                                          std::span<const double> deltas, double tau,
                                          std::span<const std::int64_t> ks,
                                          Conditioning conditioning,
                                          PhaseConvention convention) {
    for (std::int64_t k : ks) {
        if (k < 0 || k >= inst.q) {
            throw InvalidArgument("outcome k=" + std::to_string(k) + " outside [0, q)");
        }
    }
    const Evaluator eval(inst, deltas, tau, conditioning, convention);
    std::vector<double> out;
    out.reserve(ks.size());
    std::vector<cplx> scratch;
    for (std::int64_t k : ks) out.push_back(eval.probability(k, scratch));
    return out;
}

std::int64_t nearest_multiple(std::int64_t j, std::int64_t q, std::int64_t r) {
    // ceil((2 j q - r) / (2 r)) == round-half-down(j q / r)
    const auto num = static_cast<__int128>(2) * j * q - r;
    const auto den = static_cast<__int128>(2) * r;
    __int128 quot = num / den;
    if (num % den != 0 && num > 0) ++quot;
    return static_cast<std::int64_t>(quot);
}

CorrectSet correct_set(const FactoringInstance& inst, CorrectSetDefinition definition) {
    CorrectSet cset;
    cset.definition = definition;
    if (definition == CorrectSetDefinition::kNearestMultiple) {
        for (std::int64_t j = 0; j < inst.r; ++j) {
            cset.kes.push_back(nearest_multiple(j, inst.q, inst.r) % inst.q);
        }
    } else {
        if (inst.L > kMaxDistributionQubits) {
            throw SizeLimitExceeded("correct_set: work register too large to enumerate");
        }
        cset.kes.push_back(0);
        for (std::int64_t k = 1; k < inst.q; ++k) {
            const auto cands = number_theory::continued_fraction_order_candidates(k, inst.q, inst.N);
            if (std::find(cands.begin(), cands.end(), inst.r) != cands.end()) cset.kes.push_back(k);
        }
    }
    std::sort(cset.kes.begin(), cset.kes.end());
    cset.kes.erase(std::unique(cset.kes.begin(), cset.kes.end()), cset.kes.end());
    return cset;
}

SuccessProbabilities success_probabilities(const OutcomeDistribution& dist, const CorrectSet& cset) {
    SuccessProbabilities out;
    for (std::int64_t k : cset.kes) {
        if (k < 0 || k >= dist.q) {
            throw InvalidArgument("correct outcome k_e=" + std::to_string(k) +
                                  " outside [0, q=" + std::to_string(dist.q) + ")");
        }
        const double p = dist.probs[static_cast<std::size_t>(k)];
        out.per_k.emplace_back(k, p);
        out.total += p;
    }
    out.total = std::clamp(out.total, 0.0, 1.0);
    return out;
}

double success_probability(const FactoringInstance& inst, std::span<const double> deltas,
                           double tau, const CorrectSet& cset, Conditioning conditioning,
                           PhaseConvention convention) {
    const auto probs = outcome_probabilities(inst, deltas, tau, cset.kes, conditioning, convention);
    double total = 0.0;
    for (double p : probs) total += p;
    return std::clamp(total, 0.0, 1.0);
}

double analytic_n4(double tau, double delta) { return (1.0 + std::cos(tau * delta)) / 4.0; }

}  // namespace distribution
}  // namespace shordelay
