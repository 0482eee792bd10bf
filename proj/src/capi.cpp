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

#include "shordelay/shordelay.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "shordelay/distribution.hpp"
#include "shordelay/error.hpp"
#include "shordelay/montecarlo.hpp"
#include "shordelay/number_theory.hpp"
#include "shordelay/phase_model.hpp"
#include "shordelay/statevector.hpp"
#include "shordelay/version.hpp"

struct sd_instance {
    shordelay::FactoringInstance inst;
};

struct sd_splitting {
    shordelay::SplittingModel model;
};

struct sd_distribution {
    shordelay::OutcomeDistribution dist;
};

struct sd_table {
    std::vector<std::string> columns;
    std::vector<double> data;
};

namespace {

using namespace shordelay;

thread_local std::string g_last_error;

template <typename Fn>
sd_status guarded(Fn&& fn) {
    g_last_error.clear();
    try {
        fn();
        return SD_OK;
    } catch (const InvalidArgument& e) {
        g_last_error = e.what();
        return SD_INVALID_ARGUMENT;
    } catch (const SizeLimitExceeded& e) {
        g_last_error = e.what();
        return SD_SIZE_LIMIT;
    } catch (const ComputationError& e) {
        g_last_error = e.what();
        return SD_COMPUTATION_ERROR;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SD_SIZE_LIMIT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SD_INTERNAL_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return SD_INTERNAL_ERROR;
    }
}

template <typename T>
T& require(T* p, const char* what) {
    if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
    return *p;
}

std::span<const double> view(const double* p, std::size_t n, const char* what) {
    if (n > 0 && p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
    return {p, n};
}

PhaseConvention to_convention(sd_phase_convention c) {
    switch (c) {
        case SD_PHASE_HAMMING:
            return PhaseConvention::kHammingWeight;
        case SD_PHASE_IMBALANCE:
            return PhaseConvention::kExcitationImbalance;
    }
    throw InvalidArgument("unknown phase convention");
}

CorrectSetDefinition to_definition(sd_correct_set_definition d) {
    switch (d) {
        case SD_CORRECT_NEAREST_MULTIPLE:
            return CorrectSetDefinition::kNearestMultiple;
        case SD_CORRECT_CONTINUED_FRACTION:
            return CorrectSetDefinition::kContinuedFraction;
    }
    throw InvalidArgument("unknown correct-set definition");
}

Conditioning to_conditioning(std::int64_t residue) {
    return residue == SD_AVERAGED ? Conditioning::averaged() : Conditioning::fixed_residue(residue);
}

}  // namespace

extern "C" {

const char* sd_version(void) { return shordelay::kVersion; }

const char* sd_last_error(void) { return g_last_error.c_str(); }

sd_status sd_mod_pow(int64_t a, int64_t x, int64_t n, int64_t* out) {
    return guarded([&] { require(out, "out") = number_theory::mod_pow(a, x, n); });
}

sd_status sd_multiplicative_order(int64_t a, int64_t n, int64_t* out) {
    return guarded([&] { require(out, "out") = number_theory::multiplicative_order(a, n); });
}

sd_status sd_default_register_sizes(int64_t n, int32_t* l, int32_t* lprime) {
    return guarded([&] {
        const auto sizes = number_theory::default_register_sizes(n);
        require(l, "l") = sizes.L;
        require(lprime, "lprime") = sizes.Lprime;
    });
}

sd_status sd_cf_order_candidates(int64_t k, int64_t q, int64_t n, int64_t* out, size_t capacity,
                                 size_t* count) {
    std::vector<std::int64_t> values;
    const sd_status st = guarded([&] {
        values = number_theory::continued_fraction_order_candidates(k, q, n);
        require(count, "count") = values.size();
    });
    if (st != SD_OK) return st;
    if (capacity < values.size()) {
        g_last_error = "output buffer holds " + std::to_string(capacity) + " of " +
                       std::to_string(values.size()) + " values";
        return SD_BUFFER_TOO_SMALL;
    }
    return guarded([&] {
        if (!values.empty()) {
            std::memcpy(&require(out, "out"), values.data(), values.size() * sizeof(int64_t));
        }
    });
}

sd_status sd_instance_create(int64_t n, int64_t a, int32_t l, int32_t lprime, sd_instance** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        slot = new sd_instance{FactoringInstance::make(n, a, l, lprime)};
    });
}

void sd_instance_destroy(sd_instance* inst) { delete inst; }

sd_status sd_instance_get_info(const sd_instance* inst, sd_instance_info* out) {
    return guarded([&] {
        const auto& i = require(inst, "instance").inst;
        require(out, "out") = sd_instance_info{i.N, i.a, i.L, i.Lprime, i.q, i.r};
    });
}

sd_status sd_splitting_identical(double delta, sd_splitting** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        slot = new sd_splitting{SplittingModel::identical(delta)};
    });
}

sd_status sd_splitting_per_qubit(const double* deltas, size_t count, sd_splitting** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        const auto v = view(deltas, count, "deltas");
        slot = new sd_splitting{SplittingModel::per_qubit({v.begin(), v.end()})};
    });
}

sd_status sd_splitting_gaussian(double mean, double sigma, uint64_t seed, sd_splitting** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        slot = new sd_splitting{SplittingModel::gaussian(mean, sigma, seed)};
    });
}

void sd_splitting_destroy(sd_splitting* model) { delete model; }

sd_status sd_splitting_resolve(const sd_splitting* model, int32_t l, uint64_t sample_index,
                               double* out) {
    return guarded([&] {
        const auto deltas = require(model, "model").model.resolve(l, sample_index);
        if (!deltas.empty()) {
            std::memcpy(&require(out, "out"), deltas.data(), deltas.size() * sizeof(double));
        }
    });
}

sd_status sd_splitting_reference_delta(const sd_splitting* model, double* out) {
    return guarded(
        [&] { require(out, "out") = require(model, "model").model.reference_delta(); });
}

sd_status sd_state_phase(uint64_t j, const double* deltas, size_t count, double tau,
                         sd_phase_convention convention, double* out) {
    return guarded([&] {
        require(out, "out") = phase_model::state_phase(j, view(deltas, count, "deltas"), tau,
                                                       to_convention(convention));
    });
}

sd_status sd_is_phase_matched(double delta, double tau, double tol, int* out) {
    return guarded(
        [&] { require(out, "out") = phase_model::is_phase_matched(delta, tau, tol) ? 1 : 0; });
}

sd_status sd_per_qubit_phase_matched(const double* deltas, const double* taus, size_t count,
                                     double tol, int* out) {
    return guarded([&] {
        require(out, "out") = phase_model::per_qubit_phase_matched(
                                  view(deltas, count, "deltas"), view(taus, count, "taus"), tol)
                                  ? 1
                                  : 0;
    });
}

sd_status sd_outcome_distribution(const sd_instance* inst, const double* deltas, size_t count,
                                  double tau, int64_t residue, sd_phase_convention convention,
                                  sd_distribution** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        auto dist = distribution::outcome_distribution(
            require(inst, "instance").inst, view(deltas, count, "deltas"), tau,
            to_conditioning(residue), to_convention(convention));
        slot = new sd_distribution{std::move(dist)};
    });
}

void sd_distribution_destroy(sd_distribution* dist) { delete dist; }

size_t sd_distribution_size(const sd_distribution* dist) {
    return dist ? dist->dist.probs.size() : 0;
}

const double* sd_distribution_data(const sd_distribution* dist) {
    return dist ? dist->dist.probs.data() : nullptr;
}

sd_status sd_correct_set(const sd_instance* inst, sd_correct_set_definition definition,
                         int64_t* out, size_t capacity, size_t* count) {
    std::vector<std::int64_t> kes;
    const sd_status st = guarded([&] {
        kes = distribution::correct_set(require(inst, "instance").inst, to_definition(definition))
                  .kes;
        require(count, "count") = kes.size();
    });
    if (st != SD_OK) return st;
    if (capacity < kes.size()) {
        g_last_error = "output buffer holds " + std::to_string(capacity) + " of " +
                       std::to_string(kes.size()) + " values";
        return SD_BUFFER_TOO_SMALL;
    }
    return guarded([&] {
        if (!kes.empty()) std::memcpy(&require(out, "out"), kes.data(), kes.size() * sizeof(int64_t));
    });
}

sd_status sd_success_probabilities(const sd_distribution* dist, const int64_t* kes, size_t count,
                                   double* pe_per_k, double* pe_total) {
    return guarded([&] {
        if (count > 0 && kes == nullptr) throw InvalidArgument("kes must not be NULL");
        CorrectSet cset;
        cset.kes.assign(kes, kes + count);
        const auto sp = distribution::success_probabilities(require(dist, "distribution").dist, cset);
        if (pe_per_k != nullptr) {
            for (std::size_t i = 0; i < sp.per_k.size(); ++i) pe_per_k[i] = sp.per_k[i].second;
        }
        require(pe_total, "pe_total") = sp.total;
    });
}

sd_status sd_success_probability(const sd_instance* inst, const double* deltas, size_t count,
                                 double tau, const int64_t* kes, size_t ke_count, int64_t residue,
                                 sd_phase_convention convention, double* pe_total) {
    return guarded([&] {
        if (ke_count > 0 && kes == nullptr) throw InvalidArgument("kes must not be NULL");
        CorrectSet cset;
        cset.kes.assign(kes, kes + ke_count);
        require(pe_total, "pe_total") = distribution::success_probability(
            require(inst, "instance").inst, view(deltas, count, "deltas"), tau, cset,
            to_conditioning(residue), to_convention(convention));
    });
}

double sd_analytic_n4(double tau, double delta) { return distribution::analytic_n4(tau, delta); }

sd_status sd_qft(const double* in, size_t q, double* out) {
    return guarded([&] {
        const auto src = view(in, 2 * q, "in");
        std::vector<std::complex<double>> amps(q);
        for (std::size_t i = 0; i < q; ++i) amps[i] = {src[2 * i], src[2 * i + 1]};
        statevector::qft_inplace(amps);
        double* dst = &require(out, "out");
        for (std::size_t i = 0; i < q; ++i) {
            dst[2 * i] = amps[i].real();
            dst[2 * i + 1] = amps[i].imag();
        }
    });
}

sd_status sd_run_pipeline(const sd_instance* inst, const double* deltas_work, size_t work_count,
                          const double* deltas_aux, size_t aux_count,
                          const sd_delay_schedule* schedule, int forced, int64_t residue,
                          uint64_t seed, sd_phase_convention convention, int64_t* s_measured,
                          double* work_distribution, size_t capacity) {
    if (inst != nullptr && capacity < static_cast<std::size_t>(inst->inst.q)) {
        g_last_error = "work_distribution must hold q=" + std::to_string(inst->inst.q) + " values";
        return SD_BUFFER_TOO_SMALL;
    }
    return guarded([&] {
        const auto& i = require(inst, "instance").inst;
        const auto& sched = require(schedule, "schedule");
        const auto res = statevector::run_pipeline(
            i, view(deltas_work, work_count, "deltas_work"), view(deltas_aux, aux_count, "deltas_aux"),
            DelaySchedule{sched.tau1, sched.tau2, sched.tau3, sched.tau4},
            forced ? AuxOutcome::forced(residue) : AuxOutcome::born(seed), to_convention(convention));
        if (s_measured != nullptr) *s_measured = res.s_measured;
        std::memcpy(&require(work_distribution, "work_distribution"), res.work_distribution.data(),
                    res.work_distribution.size() * sizeof(double));
    });
}

sd_status sd_default_tau_offsets(double* out, size_t capacity, size_t* count) {
    const auto offsets = montecarlo::default_tau_offsets();
    const sd_status st = guarded([&] { require(count, "count") = offsets.size(); });
    if (st != SD_OK) return st;
    if (capacity < offsets.size()) {
        g_last_error = "output buffer too small for default offsets";
        return SD_BUFFER_TOO_SMALL;
    }
    return guarded([&] {
        std::memcpy(&require(out, "out"), offsets.data(), offsets.size() * sizeof(double));
    });
}

sd_status sd_ensemble_pe(const sd_ensemble_spec* spec, sd_table** out) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        const auto& s = require(spec, "spec");
        EnsembleSweepSpec cpp;
        cpp.inst = require(s.instance, "spec.instance").inst;
        cpp.mean_delta = s.mean_delta;
        const auto sig = view(s.sigma_ratios, s.sigma_count, "spec.sigma_ratios");
        cpp.sigma_ratios.assign(sig.begin(), sig.end());
        if (s.order_count > 0 && s.orders == nullptr) {
            throw InvalidArgument("spec.orders must not be NULL");
        }
        cpp.matching_orders.assign(s.orders, s.orders + s.order_count);
        const auto off = view(s.offsets, s.offset_count, "spec.offsets");
        cpp.tau_delta_offsets.assign(off.begin(), off.end());
        cpp.samples = s.samples;
        cpp.seed = s.seed;
        cpp.correct_set = to_definition(s.correct_set);
        cpp.conditioning = to_conditioning(s.residue);
        cpp.convention = to_convention(s.convention);
        cpp.workers = s.workers;
        const auto rows = montecarlo::ensemble_pe(cpp);
        auto table = std::make_unique<sd_table>();
        table->columns = {"n", "sigma_ratio", "tau_delta", "pe_mean", "pe_stderr"};
        table->data.reserve(rows.size() * 5);
        for (const auto& r : rows) {
            table->data.insert(table->data.end(), {static_cast<double>(r.n), r.sigma_ratio,
                                                   r.tau_delta, r.pe_mean, r.pe_stderr});
        }
        slot = table.release();
    });
}

sd_status sd_decay_with_qubits(int64_t n, int64_t a, double tau_delta, const int32_t* ls,
                               size_t count, int64_t residue, sd_phase_convention convention,
                               sd_table** out, sd_linear_fit* fit, int* fit_defined) {
    return guarded([&] {
        auto& slot = require(out, "out");
        slot = nullptr;
        if (count > 0 && ls == nullptr) throw InvalidArgument("ls must not be NULL");
        const std::vector<int> range(ls, ls + count);
        const auto result = montecarlo::decay_with_qubits(n, a, tau_delta, range,
                                                          to_conditioning(residue),
                                                          to_convention(convention));
        auto table = std::make_unique<sd_table>();
        table->columns = {"L", "k_e", "p_e"};
        for (const auto& r : result.rows) {
            table->data.insert(table->data.end(),
                               {static_cast<double>(r.L), static_cast<double>(r.k_e), r.p_e});
        }
        if (fit_defined != nullptr) *fit_defined = result.fit ? 1 : 0;
        if (fit != nullptr) {
            *fit = result.fit ? sd_linear_fit{result.fit->slope, result.fit->intercept,
                                              result.fit->r_squared, result.fit->points}
                              : sd_linear_fit{0.0, 0.0, 0.0, 0};
        }
        slot = table.release();
    });
}

void sd_table_destroy(sd_table* table) { delete table; }

size_t sd_table_rows(const sd_table* table) {
    if (table == nullptr || table->columns.empty()) return 0;
    return table->data.size() / table->columns.size();
}

size_t sd_table_columns(const sd_table* table) { return table ? table->columns.size() : 0; }

const char* sd_table_column_name(const sd_table* table, size_t column) {
    if (table == nullptr || column >= table->columns.size()) return nullptr;
    return table->columns[column].c_str();
}

const double* sd_table_data(const sd_table* table) {
    return table ? table->data.data() : nullptr;
}

}  // extern "C"
