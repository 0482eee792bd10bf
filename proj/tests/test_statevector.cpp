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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "shordelay/distribution.hpp"
#include "shordelay/error.hpp"
#include "shordelay/statevector.hpp"

using namespace shordelay;
using shordelay::testing::max_abs_diff;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> ones(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }

DelaySchedule thirds(double tau, double tau4 = 0.0) {
    return DelaySchedule{tau / 3.0, tau / 3.0, tau - 2.0 * (tau / 3.0), tau4};
}

}  // namespace

TEST_CASE("QFT matches the direct DFT") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int n : {1, 2, 4, 8, 64, 256}) {
        std::vector<cd> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = {g(rng), g(rng)};
        const auto fast = statevector::qft(v);
        const auto slow = testing::direct_dft(v);
        double dev = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dev = std::max(dev, std::abs(fast[i] - slow[i]));
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("QFT basic states") {
    std::vector<cd> zero(16, 0.0);
    zero[0] = 1.0;
    const auto u = statevector::qft(zero);
    for (const auto& x : u) CHECK(std::abs(x - cd(0.25, 0.0)) < 1e-14);

    const auto back = statevector::qft(std::vector<cd>(16, 0.25));
    CHECK(std::abs(back[0] - 1.0) < 1e-14);
    for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(back[i]) < 1e-14);

    std::vector<cd> comb(16, 0.0);
    for (std::size_t j = 0; j < 16; j += 4) comb[j] = 0.5;
    const auto c = statevector::qft(comb);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(std::norm(c[k]) == doctest::Approx(k % 4 == 0 ? 0.25 : 0.0));
    }

    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    std::vector<cd> v(128);
    double norm = 0.0;
    for (auto& x : v) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    double out = 0.0;
    for (const auto& x : statevector::qft(v)) out += std::norm(x);
    CHECK(out == doctest::Approx(norm).epsilon(1e-12));

    std::vector<cd> odd(12);
    CHECK_THROWS_AS(statevector::qft(odd), InvalidArgument);
}

TEST_CASE("pipeline agrees with the closed form for every residue") {
    struct Case {
        std::int64_t N, a;
        int L, Lp;
    };
    for (const auto& c : {Case{15, 13, 4, 4}, Case{15, 7, 6, 4}, Case{21, 5, 9, 5},
                          Case{4, 3, 2, 2}, Case{33, 5, 8, 6}, Case{15, 13, 8, 4}}) {
        const auto inst = FactoringInstance::make(c.N, c.a, c.L, c.Lp);
        for (double td : {0.0, 0.4 * kPi, kPi, 5.0 * kPi / 3.0, 2.0 * kPi}) {
            for (std::int64_t s = 0; s < inst.r; ++s) {
                const auto res = statevector::run_pipeline(inst, ones(c.L), ones(c.Lp), thirds(td),
                                                           AuxOutcome::forced(s));
                const auto closed = distribution::outcome_distribution(
                    inst, ones(c.L), td, Conditioning::fixed_residue(s));
                CHECK(res.s_measured == s);
                CHECK(res.aux_value == number_theory::mod_pow(c.a, s, c.N));
                CHECK(max_abs_diff(res.work_distribution, closed.probs) < 1e-10);
                CHECK(res.aux_probability ==
                      doctest::Approx(static_cast<double>(number_theory::residue_count(inst.q, inst.r, s)) /
                                      static_cast<double>(inst.q)));
            }
        }
    }
}

TEST_CASE("pipeline with per-qubit splittings matches the brute-force oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> tau(0.0, 9.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = testing::random_instance(rng, 33, 8);
        const auto dw = testing::random_deltas(rng, inst.L);
        const auto da = testing::random_deltas(rng, inst.Lprime);
        const double t = tau(rng);
        const std::int64_t s =
            static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min(inst.r, inst.q)));
        const auto res = statevector::run_pipeline(inst, dw, da, thirds(t, 0.7), AuxOutcome::forced(s));
        CHECK(max_abs_diff(res.work_distribution, testing::brute_conditional(inst, dw, t, s)) < 1e-10);
    }
}

TEST_CASE("pipeline invariances") {
    const auto inst = FactoringInstance::make(21, 5, 7, 5);
    const std::vector<double> dw{1.0, 0.9, 1.1, 1.2, 0.8, 1.05, 0.95};
    const double tau = 2.3;

    SUBCASE("stage norms stay at one") {
        const auto r = statevector::run_pipeline(inst, dw, ones(5), thirds(tau), AuxOutcome::forced(1));
        CHECK(r.stage_norms.size() == 8);
        for (double n : r.stage_norms) CHECK(std::fabs(n - 1.0) < 1e-12);
    }
    SUBCASE("auxiliary splittings do not matter") {
        const auto a = statevector::run_pipeline(inst, dw, ones(5), thirds(tau), AuxOutcome::forced(3));
        const auto b = statevector::run_pipeline(inst, dw, std::vector<double>{0.1, 7.0, 3.3, 2.0, 9.0},
                                                 thirds(tau), AuxOutcome::forced(3));
        CHECK(max_abs_diff(a.work_distribution, b.work_distribution) < 1e-12);
    }
    SUBCASE("only the total of tau1..tau3 matters") {
        const auto a = statevector::run_pipeline(inst, dw, ones(5), DelaySchedule{tau, 0, 0, 0},
                                                 AuxOutcome::forced(2));
        const auto b = statevector::run_pipeline(inst, dw, ones(5), DelaySchedule{0, 0, tau, 0},
                                                 AuxOutcome::forced(2));
        const auto c = statevector::run_pipeline(inst, dw, ones(5),
                                                 DelaySchedule{0.5, tau - 1.5, 1.0, 0},
                                                 AuxOutcome::forced(2));
        CHECK(max_abs_diff(a.work_distribution, b.work_distribution) < 1e-10);
        CHECK(max_abs_diff(a.work_distribution, c.work_distribution) < 1e-10);
    }
    SUBCASE("tau4 changes amplitudes but not probabilities") {
        const auto a = statevector::run_pipeline(inst, dw, ones(5), thirds(tau, 0.0), AuxOutcome::forced(0));
        const auto b = statevector::run_pipeline(inst, dw, ones(5), thirds(tau, 1.3), AuxOutcome::forced(0));
        CHECK(max_abs_diff(a.work_distribution, b.work_distribution) < 1e-12);
        double amp_dev = 0.0;
        for (std::size_t i = 0; i < a.work_amplitudes.size(); ++i) {
            amp_dev = std::max(amp_dev, std::abs(a.work_amplitudes[i] - b.work_amplitudes[i]));
        }
        CHECK(amp_dev > 1e-3);
    }
}

TEST_CASE("Born sampling reproduces the residue weights") {
    const auto inst = FactoringInstance::make(21, 5, 5, 5);  // q = 32, r = 6
    const int runs = 10000;
    std::vector<int> counts(static_cast<std::size_t>(inst.r), 0);
    for (int i = 0; i < runs; ++i) {
        const auto res = statevector::run_pipeline(inst, ones(5), ones(5), thirds(0.0),
                                                   AuxOutcome::born(static_cast<std::uint64_t>(i)));
        REQUIRE(res.s_measured >= 0);
        REQUIRE(res.s_measured < inst.r);
        ++counts[static_cast<std::size_t>(res.s_measured)];
    }
    for (std::int64_t s = 0; s < inst.r; ++s) {
        const double p = static_cast<double>(number_theory::residue_count(inst.q, inst.r, s)) / 32.0;
        const double sd = std::sqrt(runs * p * (1.0 - p));
        CHECK(std::fabs(counts[static_cast<std::size_t>(s)] - runs * p) < 3.0 * sd + 1.0);
    }
    const auto a = statevector::run_pipeline(inst, ones(5), ones(5), thirds(1.0), AuxOutcome::born(42));
    const auto b = statevector::run_pipeline(inst, ones(5), ones(5), thirds(1.0), AuxOutcome::born(42));
    CHECK(a.s_measured == b.s_measured);
    CHECK(a.work_distribution == b.work_distribution);
}

TEST_CASE("pipeline errors") {
    const auto inst = FactoringInstance::make(15, 13, 4, 4);
    CHECK_THROWS_AS(statevector::run_pipeline(inst, ones(3), ones(4), thirds(1.0), AuxOutcome::forced(0)),
                    InvalidArgument);
    CHECK_THROWS_AS(statevector::run_pipeline(inst, ones(4), ones(3), thirds(1.0), AuxOutcome::forced(0)),
                    InvalidArgument);
    CHECK_THROWS_AS(statevector::run_pipeline(inst, ones(4), ones(4), thirds(1.0), AuxOutcome::forced(4)),
                    InvalidArgument);
    CHECK_THROWS_AS(statevector::run_pipeline(inst, ones(4), ones(4), DelaySchedule{-1, 0, 0, 0},
                                              AuxOutcome::forced(0)),
                    InvalidArgument);
    const auto tiny = FactoringInstance::make(15, 13, 1, 4);
    CHECK_THROWS_AS(statevector::run_pipeline(tiny, ones(1), ones(4), thirds(1.0), AuxOutcome::forced(3)),
                    ComputationError);
    CHECK_THROWS_AS(JointState(20, 5), SizeLimitExceeded);
    CHECK_NOTHROW(JointState(4, 4));
}
