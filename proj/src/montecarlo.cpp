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

#include "shordelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shordelay/error.hpp"
#include "shordelay/parallel.hpp"

namespace shordelay {

void EnsembleSweepSpec::validate() const {
    if (samples < 1) throw InvalidArgument("ensemble sweep: samples must be >= 1");
    if (!std::isfinite(mean_delta) || mean_delta <= 0.0) {
        throw InvalidArgument("ensemble sweep: mean splitting must be finite and > 0");
    }
    for (double s : sigma_ratios) {
        if (!std::isfinite(s) || s < 0.0) {
            throw InvalidArgument("ensemble sweep: sigma ratios must be finite and >= 0");
        }
    }
    for (int n : matching_orders) {
        if (n < 0) throw InvalidArgument("ensemble sweep: matching orders must be >= 0");
    }
    for (double off : tau_delta_offsets) {
        if (!std::isfinite(off)) throw InvalidArgument("ensemble sweep: offsets must be finite");
    }
}

namespace montecarlo {

std::vector<double> default_tau_offsets() {
    constexpr int kPoints = 81;
    constexpr double kHalfWidth = 0.2 * std::numbers::pi;
    std::vector<double> out(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        out[static_cast<std::size_t>(i)] =
            -kHalfWidth + 2.0 * kHalfWidth * static_cast<double>(i) / (kPoints - 1);
    }
    return out;
}

std::vector<EnsembleRow> ensemble_pe(const EnsembleSweepSpec& spec) {
    spec.validate();
    const FactoringInstance& inst = spec.inst;
    const CorrectSet cset = distribution::correct_set(inst, spec.correct_set);
    const std::vector<double> offsets =
        spec.tau_delta_offsets.empty() ? std::vector<double>{0.0} : spec.tau_delta_offsets;

    // (n, offset) grid shared by every sigma.
    std::vector<double> tau_deltas;
    for (int n : spec.matching_orders) {
        for (double off : offsets) tau_deltas.push_back(2.0 * n * std::numbers::pi + off);
    }
    for (double td : tau_deltas) {
        if (td < 0.0) {
            throw InvalidArgument("ensemble sweep: grid reaches negative tau*Delta (" +
                                  std::to_string(td) + ")");
        }
    }

    const std::size_t points = tau_deltas.size();
    const auto samples = static_cast<std::size_t>(spec.samples);
    // rows[sigma][point]
    std::vector<std::vector<EnsembleRow>> by_sigma(spec.sigma_ratios.size());
    std::vector<double> pe(samples * points);

    for (std::size_t si = 0; si < spec.sigma_ratios.size(); ++si) {
        const GaussianEnsemble ensemble{spec.mean_delta, spec.sigma_ratios[si] * spec.mean_delta,
                                        spec.seed};
        detail::parallel_for(
            samples,
            [&](std::size_t i) {
                const auto deltas = phase_model::sample_splittings(ensemble, inst.L, i);
                for (std::size_t p = 0; p < points; ++p) {
                    const double tau = tau_deltas[p] / spec.mean_delta;
                    pe[i * points + p] = distribution::success_probability(
                        inst, deltas, tau, cset, spec.conditioning, spec.convention);
                }
            },
            spec.workers);

        auto& rows = by_sigma[si];
        rows.resize(points);
        for (std::size_t p = 0; p < points; ++p) {
            // Welford, in sample order: identical inputs give that value and zero variance.
            double mean = 0.0;
            double m2 = 0.0;
            for (std::size_t i = 0; i < samples; ++i) {
                const double x = pe[i * points + p];
                const double d = x - mean;
                mean += d / static_cast<double>(i + 1);
                m2 += d * (x - mean);
            }
            EnsembleRow& row = rows[p];
            row.n = spec.matching_orders[p / offsets.size()];
            row.sigma_ratio = spec.sigma_ratios[si];
            row.tau_delta = tau_deltas[p];
            row.pe_mean = mean;
            row.pe_stderr = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) /
                                                    static_cast<double>(samples))
                                        : 0.0;
        }
    }

    std::vector<EnsembleRow> out;
    out.reserve(points * spec.sigma_ratios.size());
    for (std::size_t ni = 0; ni < spec.matching_orders.size(); ++ni) {
        for (const auto& rows : by_sigma) {
            for (std::size_t o = 0; o < offsets.size(); ++o) {
                out.push_back(rows[ni * offsets.size() + o]);
            }
        }
    }
    return out;
}

std::optional<LinearFit> fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;
    LinearFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        sse += e * e;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

DecayResult decay_with_qubits(std::int64_t N, std::int64_t a, double tau_delta,
                              std::span<const int> L_range, Conditioning conditioning,
                              PhaseConvention convention) {
    if (L_range.empty()) throw InvalidArgument("decay_with_qubits: empty L range");
    if (!std::is_sorted(L_range.begin(), L_range.end())) {
        throw InvalidArgument("decay_with_qubits: L range must be ascending");
    }
    if (!std::isfinite(tau_delta) || tau_delta < 0.0) {
        throw InvalidArgument("decay_with_qubits: tau*Delta must be finite and >= 0");
    }
    DecayResult result;
    std::vector<double> xs;
    std::vector<double> ys;
    for (int L : L_range) {
        const auto inst = FactoringInstance::make(N, a, L);
        const CorrectSet cset = distribution::correct_set(inst);
        const std::vector<double> deltas(static_cast<std::size_t>(L), 1.0);
        const auto probs =
            distribution::outcome_probabilities(inst, deltas, tau_delta, cset.kes, conditioning,
                                                convention);
        for (std::size_t i = 0; i < cset.kes.size(); ++i) {
            result.rows.push_back({L, cset.kes[i], probs[i]});
            if (probs[i] >= 1e-300) {
                xs.push_back(static_cast<double>(L));
                ys.push_back(std::log(probs[i]));
            }
        }
    }
    result.fit = fit_line(xs, ys);
    return result;
}

}  // namespace montecarlo
}  // namespace shordelay
