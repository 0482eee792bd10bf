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

// Command-line front end. Every subcommand is a thin layer over the C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "shordelay/shordelay.h"

namespace {

using shordelay::cli::Cell;
using shordelay::cli::format_real;
using shordelay::cli::OutputFile;
using shordelay::cli::parse_real_or_ratio;
using shordelay::cli::Table;

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(sd_status st) {
    if (st == SD_OK) return;
    if (st == SD_INVALID_ARGUMENT) throw UsageError(sd_last_error());
    throw ComputeError(sd_last_error());
}

struct InstanceDeleter {
    void operator()(sd_instance* p) const { sd_instance_destroy(p); }
};
struct SplittingDeleter {
    void operator()(sd_splitting* p) const { sd_splitting_destroy(p); }
};
struct DistributionDeleter {
    void operator()(sd_distribution* p) const { sd_distribution_destroy(p); }
};
struct TableDeleter {
    void operator()(sd_table* p) const { sd_table_destroy(p); }
};
using InstancePtr = std::unique_ptr<sd_instance, InstanceDeleter>;
using SplittingPtr = std::unique_ptr<sd_splitting, SplittingDeleter>;
using DistributionPtr = std::unique_ptr<sd_distribution, DistributionDeleter>;
using TablePtr = std::unique_ptr<sd_table, TableDeleter>;

struct InstanceOptions {
    std::int64_t N = 0;
    std::int64_t a = 0;
    int L = 0;
    int Lprime = 0;
};

struct PhysicsOptions {
    std::string splitting = "identical";
    double delta = 1.0;
    std::vector<double> deltas;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string convention = "hamming";
    std::string conditioning = "averaged";
    std::string correct_set = "nearest";
};

struct OutputOptions {
    std::string out = "-";
    std::string format = "csv";
};

struct Resolved {
    InstancePtr instance;
    sd_instance_info info{};
    std::vector<double> deltas;
    double reference_delta = 1.0;
    std::int64_t residue = SD_AVERAGED;
    sd_phase_convention convention = SD_PHASE_HAMMING;
    sd_correct_set_definition correct_set = SD_CORRECT_NEAREST_MULTIPLE;
};

InstancePtr make_instance(const InstanceOptions& o, int L_override = -1) {
    sd_instance* raw = nullptr;
    check(sd_instance_create(o.N, o.a, L_override >= 0 ? L_override : o.L, o.Lprime, &raw));
    return InstancePtr(raw);
}

sd_instance_info info_of(const sd_instance* inst) {
    sd_instance_info info{};
    check(sd_instance_get_info(inst, &info));
    return info;
}

std::int64_t parse_conditioning(const std::string& text) {
    if (text == "averaged") return SD_AVERAGED;
    std::int64_t s = -1;
    try {
        std::size_t used = 0;
        s = std::stoll(text, &used);
        if (used != text.size()) s = -1;
    } catch (const std::exception&) {
        s = -1;
    }
    if (s < 0) throw UsageError("conditioning must be 'averaged' or a residue s >= 0, got '" + text + "'");
    return s;
}

SplittingPtr make_splitting(const PhysicsOptions& p) {
    sd_splitting* raw = nullptr;
    if (p.splitting == "identical") {
        check(sd_splitting_identical(p.delta, &raw));
    } else if (p.splitting == "per-qubit") {
        check(sd_splitting_per_qubit(p.deltas.data(), p.deltas.size(), &raw));
    } else {
        check(sd_splitting_gaussian(p.delta, p.sigma, p.seed, &raw));
    }
    return SplittingPtr(raw);
}

Resolved resolve(const InstanceOptions& io, const PhysicsOptions& po) {
    Resolved r;
    r.instance = make_instance(io);
    r.info = info_of(r.instance.get());
    const auto model = make_splitting(po);
    r.deltas.resize(static_cast<std::size_t>(r.info.l));
    check(sd_splitting_resolve(model.get(), r.info.l, 0, r.deltas.data()));
    check(sd_splitting_reference_delta(model.get(), &r.reference_delta));
    if (r.reference_delta <= 0.0) throw UsageError("reference splitting must be > 0");
    r.residue = parse_conditioning(po.conditioning);
    r.convention = po.convention == "imbalance" ? SD_PHASE_IMBALANCE : SD_PHASE_HAMMING;
    r.correct_set =
        po.correct_set == "cf" ? SD_CORRECT_CONTINUED_FRACTION : SD_CORRECT_NEAREST_MULTIPLE;
    return r;
}

std::vector<std::int64_t> correct_outcomes(const sd_instance* inst, sd_correct_set_definition d) {
    std::size_t count = 0;
    const sd_status st = sd_correct_set(inst, d, nullptr, 0, &count);
    if (st != SD_OK && st != SD_BUFFER_TOO_SMALL) check(st);
    std::vector<std::int64_t> kes(count);
    check(sd_correct_set(inst, d, kes.data(), kes.size(), &count));
    return kes;
}

std::vector<double> parse_angles(const std::vector<std::string>& texts) {
    std::vector<double> out;
    for (const auto& t : texts) {
        try {
            out.push_back(parse_real_or_ratio(t));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("tau-delta-pi: ") + e.what());
        }
    }
    return out;
}

std::string instance_tag(const sd_instance_info& i) {
    std::ostringstream s;
    s << "N" << i.n << "-a" << i.a << "-L" << i.l << "-Lp" << i.lprime << "-r" << i.r;
    return s.str();
}

std::vector<std::pair<std::string, std::string>> metadata(const std::string& command,
                                                          const std::string& instance,
                                                          std::uint64_t seed) {
    return {{"instance", instance},
            {"seed", std::to_string(seed)},
            {"version", sd_version()},
            {"command", command}};
}

void add_physics_metadata(Table& t, const PhysicsOptions& p) {
    t.metadata.emplace_back("splitting", p.splitting);
    t.metadata.emplace_back("phase-convention", p.convention);
    t.metadata.emplace_back("conditioning", p.conditioning);
    t.metadata.emplace_back("correct-set", p.correct_set);
}

void emit(const Table& t, const OutputOptions& o) {
    OutputFile file(o.out);
    file.write(o.format == "json" ? t.to_json() : t.to_csv());
    file.commit();
}

// ---- option registration ---------------------------------------------------

void add_instance_options(CLI::App* sub, InstanceOptions& o, bool with_L = true) {
    sub->add_option("-N,--N", o.N, "Composite integer to factor")->required();
    sub->add_option("-a,--a", o.a, "Base a, 1 < a < N, gcd(a, N) = 1")->required();
    if (with_L) {
        sub->add_option("--L", o.L, "Work-register qubits (0 = smallest L with N^2 < 2^L)");
    }
    sub->add_option("--Lprime", o.Lprime, "Auxiliary-register qubits (0 = default)");
}

void add_physics_options(CLI::App* sub, PhysicsOptions& p) {
    sub->add_option("--splitting", p.splitting, "Splitting model")
        ->check(CLI::IsMember({"identical", "per-qubit", "gaussian"}));
    sub->add_option("--delta", p.delta, "Splitting (identical) or ensemble mean (gaussian)");
    sub->add_option("--deltas", p.deltas, "Per-qubit splittings, qubit 0 first")->delimiter(',');
    sub->add_option("--sigma", p.sigma, "Gaussian ensemble width (absolute)");
    sub->add_option("--seed", p.seed, "Seed for Gaussian sampling");
    sub->add_option("--phase-convention", p.convention, "Dynamical phase convention")
        ->check(CLI::IsMember({"hamming", "imbalance"}));
    sub->add_option("--conditioning", p.conditioning,
                    "'averaged' over auxiliary outcomes, or a fixed residue s");
    sub->add_option("--correct-set", p.correct_set, "Correct-output definition")
        ->check(CLI::IsMember({"nearest", "cf"}));
}

void add_output_options(CLI::App* sub, OutputOptions& o, const std::string& default_format) {
    o.format = default_format;
    sub->add_option("--out", o.out, "Output path ('-' for stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

// ---- subcommands -------------------------------------------------------------

struct OrderCmd {
    std::int64_t N = 0;
    std::int64_t a = 0;
    OutputOptions out;

    void run() const {
        std::int64_t r = 0;
        check(sd_multiplicative_order(a, N, &r));
        Table t;
        t.metadata = metadata("order", "N" + std::to_string(N) + "-a" + std::to_string(a), 0);
        t.columns = {"N", "a", "r"};
        t.rows.push_back({Cell{N}, Cell{a}, Cell{r}});
        emit(t, out);
    }
};

struct SizesCmd {
    std::int64_t N = 0;
    OutputOptions out;

    void run() const {
        std::int32_t L = 0;
        std::int32_t Lp = 0;
        check(sd_default_register_sizes(N, &L, &Lp));
        Table t;
        t.metadata = metadata("sizes", "N" + std::to_string(N), 0);
        t.columns = {"N", "L", "Lprime", "q"};
        t.rows.push_back({Cell{N}, Cell{std::int64_t{L}}, Cell{std::int64_t{Lp}},
                          Cell{std::int64_t{1} << L}});
        emit(t, out);
    }
};

struct DistributionCmd {
    InstanceOptions inst;
    PhysicsOptions phys;
    OutputOptions out;
    std::vector<std::string> tau_delta_pi{"0"};

    void run() const {
        const Resolved r = resolve(inst, phys);
        Table t;
        t.metadata = metadata("distribution", instance_tag(r.info), phys.seed);
        add_physics_metadata(t, phys);
        t.columns = {"tau_delta", "k", "P"};
        for (double td : parse_angles(tau_delta_pi)) {
            if (td < 0.0) throw UsageError("tau-delta-pi must be >= 0");
            const double tau = td * kPi / r.reference_delta;
            sd_distribution* raw = nullptr;
            check(sd_outcome_distribution(r.instance.get(), r.deltas.data(), r.deltas.size(), tau,
                                          r.residue, r.convention, &raw));
            const DistributionPtr dist(raw);
            const double* p = sd_distribution_data(dist.get());
            for (std::size_t k = 0; k < sd_distribution_size(dist.get()); ++k) {
                t.rows.push_back({Cell{td}, Cell{static_cast<std::int64_t>(k)}, Cell{p[k]}});
            }
        }
        emit(t, out);
    }
};

struct SweepDelayCmd {
    InstanceOptions inst;
    PhysicsOptions phys;
    OutputOptions out;
    double tau_min_pi = 0.0;
    double tau_max_pi = 4.0;
    int steps = 401;

    void run() const {
        if (steps < 1) throw UsageError("steps must be >= 1");
        if (tau_min_pi < 0.0 || tau_max_pi < tau_min_pi) {
            throw UsageError("need 0 <= tau-min-pi <= tau-max-pi");
        }
        const Resolved r = resolve(inst, phys);
        const auto kes = correct_outcomes(r.instance.get(), r.correct_set);
        Table t;
        t.metadata = metadata("sweep-delay", instance_tag(r.info), phys.seed);
        add_physics_metadata(t, phys);
        t.columns = {"tau_delta", "Pe"};
        for (int i = 0; i < steps; ++i) {
            const double td =
                steps == 1 ? tau_min_pi
                           : tau_min_pi + (tau_max_pi - tau_min_pi) * i / static_cast<double>(steps - 1);
            double pe = 0.0;
            check(sd_success_probability(r.instance.get(), r.deltas.data(), r.deltas.size(),
                                         td * kPi / r.reference_delta, kes.data(), kes.size(),
                                         r.residue, r.convention, &pe));
            t.rows.push_back({Cell{td}, Cell{pe}});
        }
        emit(t, out);
    }
};

struct SweepQubitsCmd {
    InstanceOptions inst;
    PhysicsOptions phys;
    OutputOptions out;
    int L_min = 4;
    int L_max = 8;
    std::string tau_delta_pi = "5/3";
    std::string fit_out;

    void run() const {
        if (L_min < 1 || L_max < L_min) throw UsageError("need 1 <= L-min <= L-max");
        const double td = parse_angles({tau_delta_pi}).front();
        if (td < 0.0) throw UsageError("tau-delta-pi must be >= 0");
        std::vector<std::int32_t> Ls;
        for (int L = L_min; L <= L_max; ++L) Ls.push_back(L);
        const std::int64_t residue = parse_conditioning(phys.conditioning);
        const sd_phase_convention conv =
            phys.convention == "imbalance" ? SD_PHASE_IMBALANCE : SD_PHASE_HAMMING;
        sd_table* raw = nullptr;
        sd_linear_fit fit{};
        int fit_defined = 0;
        check(sd_decay_with_qubits(inst.N, inst.a, td * kPi, Ls.data(), Ls.size(), residue, conv,
                                   &raw, &fit, &fit_defined));
        const TablePtr rows(raw);

        std::ostringstream tag;
        tag << "N" << inst.N << "-a" << inst.a << "-L" << L_min << ".." << L_max;
        Table t;
        t.metadata = metadata("sweep-qubits", tag.str(), 0);
        t.metadata.emplace_back("tau_delta", format_real(td));
        t.metadata.emplace_back("phase-convention", phys.convention);
        t.metadata.emplace_back("conditioning", phys.conditioning);
        t.columns = {"L", "k_e", "p_e"};
        const double* d = sd_table_data(rows.get());
        for (std::size_t i = 0; i < sd_table_rows(rows.get()); ++i) {
            t.rows.push_back({Cell{static_cast<std::int64_t>(d[3 * i])},
                              Cell{static_cast<std::int64_t>(d[3 * i + 1])}, Cell{d[3 * i + 2]}});
        }

        nlohmann::ordered_json side;
        side["instance"] = tag.str();
        side["tau_delta"] = td;
        side["fit_defined"] = fit_defined != 0;
        if (fit_defined) {
            side["slope"] = fit.slope;
            side["intercept"] = fit.intercept;
            side["r_squared"] = fit.r_squared;
            side["points"] = fit.points;
        }
        const std::string side_path =
            !fit_out.empty() ? fit_out : (out.out == "-" ? std::string() : out.out + ".fit.json");

        // Both files are staged before either is committed.
        OutputFile main_file(out.out);
        main_file.write(out.format == "json" ? t.to_json() : t.to_csv());
        if (side_path.empty()) {
            std::cerr << side.dump() << '\n';
            main_file.commit();
        } else {
            OutputFile side_file(side_path);
            side_file.write(side.dump(2) + "\n");
            main_file.commit();
            side_file.commit();
        }
    }
};

struct SweepSigmaCmd {
    InstanceOptions inst;
    OutputOptions out;
    double mean_delta = 1.0;
    std::vector<double> sigma_ratios{0.0001, 0.003, 0.007, 0.011};
    std::vector<int> orders{1};
    double offset_half_width_pi = 0.2;
    int offset_points = 81;
    std::int64_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string convention = "hamming";
    std::string conditioning = "averaged";
    std::string correct_set = "nearest";

    void run() const {
        if (offset_points < 1) throw UsageError("offset-points must be >= 1");
        const InstancePtr instance = make_instance(inst);
        const sd_instance_info info = info_of(instance.get());
        std::vector<double> offsets;
        if (offset_points > 1) {
            for (int i = 0; i < offset_points; ++i) {
                offsets.push_back(offset_half_width_pi * kPi *
                                  (-1.0 + 2.0 * i / static_cast<double>(offset_points - 1)));
            }
        }
        std::vector<std::int32_t> orders32(orders.begin(), orders.end());
        sd_ensemble_spec spec{};
        spec.instance = instance.get();
        spec.mean_delta = mean_delta;
        spec.sigma_ratios = sigma_ratios.data();
        spec.sigma_count = sigma_ratios.size();
        spec.orders = orders32.data();
        spec.order_count = orders32.size();
        spec.offsets = offsets.empty() ? nullptr : offsets.data();
        spec.offset_count = offsets.size();
        spec.samples = samples;
        spec.seed = seed;
        spec.correct_set = correct_set == "cf" ? SD_CORRECT_CONTINUED_FRACTION
                                               : SD_CORRECT_NEAREST_MULTIPLE;
        spec.residue = parse_conditioning(conditioning);
        spec.convention = convention == "imbalance" ? SD_PHASE_IMBALANCE : SD_PHASE_HAMMING;
        spec.workers = workers;
        sd_table* raw = nullptr;
        check(sd_ensemble_pe(&spec, &raw));
        const TablePtr rows(raw);

        Table t;
        t.metadata = metadata("sweep-sigma", instance_tag(info), seed);
        t.metadata.emplace_back("samples", std::to_string(samples));
        t.metadata.emplace_back("mean_delta", format_real(mean_delta));
        t.metadata.emplace_back("phase-convention", convention);
        t.metadata.emplace_back("conditioning", conditioning);
        t.metadata.emplace_back("correct-set", correct_set);
        t.columns = {"n", "sigma_ratio", "tau_delta", "Pe_mean", "Pe_stderr"};
        const double* d = sd_table_data(rows.get());
        for (std::size_t i = 0; i < sd_table_rows(rows.get()); ++i) {
            const double* row = d + 5 * i;
            t.rows.push_back({Cell{static_cast<std::int64_t>(row[0])}, Cell{row[1]},
                              Cell{row[2] / kPi}, Cell{row[3]}, Cell{row[4]}});
        }
        emit(t, out);
    }
};

struct OracleCheckCmd {
    InstanceOptions inst;
    PhysicsOptions phys;
    OutputOptions out;
    std::vector<std::string> tau_delta_pi{"0", "0.4", "1", "1.6", "2"};
    double tau4_pi = 0.5;
    double aux_delta = 1.0;
    double tolerance = 1e-10;
    double analytic_tolerance = 1e-12;

    void run() const {
        const Resolved r = resolve(inst, phys);
        const auto& info = r.info;
        const std::vector<double> aux(static_cast<std::size_t>(info.lprime), aux_delta);
        const auto q = static_cast<std::size_t>(info.q);
        const bool analytic = info.n == 4 && info.a == 3 && info.l == 2 && phys.splitting == "identical" &&
                              r.convention == SD_PHASE_HAMMING;

        Table t;
        t.metadata = metadata("oracle-check", instance_tag(info), phys.seed);
        add_physics_metadata(t, phys);
        t.columns = {"tau_delta", "s", "max_deviation"};
        if (analytic) t.columns.push_back("analytic_deviation");
        double worst = 0.0;
        double worst_analytic = 0.0;
        std::vector<double> oracle(q);
        for (double td : parse_angles(tau_delta_pi)) {
            if (td < 0.0) throw UsageError("tau-delta-pi must be >= 0");
            const double tau = td * kPi / r.reference_delta;
            const sd_delay_schedule sched{tau / 3.0, tau / 3.0, tau - 2.0 * (tau / 3.0),
                                          tau4_pi * kPi / r.reference_delta};
            for (std::int64_t s = 0; s < info.r; ++s) {
                if (s >= info.q) continue;  // residue never observed
                std::int64_t measured = -1;
                check(sd_run_pipeline(r.instance.get(), r.deltas.data(), r.deltas.size(),
                                      aux.data(), aux.size(), &sched, 1, s, 0, r.convention,
                                      &measured, oracle.data(), oracle.size()));
                sd_distribution* raw = nullptr;
                check(sd_outcome_distribution(r.instance.get(), r.deltas.data(), r.deltas.size(),
                                              sched.tau1 + sched.tau2 + sched.tau3, s,
                                              r.convention, &raw));
                const DistributionPtr closed(raw);
                const double* p = sd_distribution_data(closed.get());
                double dev = 0.0;
                for (std::size_t k = 0; k < q; ++k) dev = std::max(dev, std::fabs(p[k] - oracle[k]));
                worst = std::max(worst, dev);
                std::vector<Cell> row{Cell{td}, Cell{s}, Cell{dev}};
                if (analytic) {
                    const double expect = sd_analytic_n4(tau, r.reference_delta);
                    double adev = 0.0;
                    for (std::size_t k : {std::size_t{0}, std::size_t{2}}) {
                        adev = std::max({adev, std::fabs(p[k] - expect), std::fabs(oracle[k] - expect)});
                    }
                    worst_analytic = std::max(worst_analytic, adev);
                    row.emplace_back(adev);
                }
                t.rows.push_back(std::move(row));
            }
        }

        if (out.format == "json") {
            nlohmann::ordered_json doc;
            doc["instance"] = {{"N", info.n}, {"a", info.a}, {"L", info.l},
                               {"Lprime", info.lprime}, {"q", info.q}, {"r", info.r}};
            doc["metadata"] = nlohmann::ordered_json::object();
            for (const auto& [k, v] : t.metadata) doc["metadata"][k] = v;
            auto checks = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                nlohmann::ordered_json c;
                c["tau_delta"] = std::get<double>(row[0]);
                c["s"] = std::get<std::int64_t>(row[1]);
                c["max_deviation"] = std::get<double>(row[2]);
                if (analytic) c["analytic_deviation"] = std::get<double>(row[3]);
                checks.push_back(std::move(c));
            }
            doc["checks"] = std::move(checks);
            doc["max_deviation"] = worst;
            doc["tolerance"] = tolerance;
            if (analytic) {
                doc["analytic_max_deviation"] = worst_analytic;
                doc["analytic_tolerance"] = analytic_tolerance;
            }
            doc["pass"] = worst < tolerance && (!analytic || worst_analytic < analytic_tolerance);
            OutputFile file(out.out);
            file.write(doc.dump(2) + "\n");
            file.commit();
        } else {
            emit(t, out);
        }
        if (!(worst < tolerance)) {
            throw ComputeError("oracle deviation " + format_real(worst) + " exceeds tolerance " +
                               format_real(tolerance));
        }
        if (analytic && !(worst_analytic < analytic_tolerance)) {
            throw ComputeError("analytic deviation " + format_real(worst_analytic) +
                               " exceeds tolerance " + format_real(analytic_tolerance));
        }
    }
};

// Section for the selected subcommand with every option written out.
// Unset list options are dropped and captured list defaults are unquoted so
// the file parses back to the same values.
std::string resolved_config(const CLI::App& sub) {
    std::istringstream in(sub.config_to_str(true, false));
    std::string out = "[" + sub.get_name() + "]\n";
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string value = line.substr(eq + 1);
        if (value == "\"{}\"" || value == "\"\"") continue;
        if (value.size() > 3 && value.front() == '"' && value[1] == '[' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        out += line.substr(0, eq + 1) + value + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order finding with operational delays: closed-form distributions, "
                 "state-vector checks and parameter sweeps"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "Read options from a TOML/INI config file");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sd_version()));
    std::string emit_config;
    app.add_option("--emit-config", emit_config,
                   "Write the fully resolved configuration to this path")
        ->configurable(false);

    OrderCmd order;
    auto* order_app = app.add_subcommand("order", "Multiplicative order of a mod N");
    order_app->add_option("-N,--N", order.N, "Modulus")->required();
    order_app->add_option("-a,--a", order.a, "Base")->required();
    add_output_options(order_app, order.out, "csv");

    SizesCmd sizes;
    auto* sizes_app = app.add_subcommand("sizes", "Default register sizes for N");
    sizes_app->add_option("-N,--N", sizes.N, "Composite integer")->required();
    add_output_options(sizes_app, sizes.out, "csv");

    DistributionCmd dist;
    auto* dist_app = app.add_subcommand("distribution", "Outcome distribution P(k) per tau*Delta");
    add_instance_options(dist_app, dist.inst);
    add_physics_options(dist_app, dist.phys);
    add_output_options(dist_app, dist.out, "csv");
    dist_app->add_option("--tau-delta-pi", dist.tau_delta_pi, "tau*Delta values in units of pi")
        ->delimiter(',');

    SweepDelayCmd delay;
    auto* delay_app = app.add_subcommand("sweep-delay", "P_e versus tau*Delta");
    add_instance_options(delay_app, delay.inst);
    add_physics_options(delay_app, delay.phys);
    add_output_options(delay_app, delay.out, "csv");
    delay_app->add_option("--tau-min-pi", delay.tau_min_pi, "Grid start (units of pi)");
    delay_app->add_option("--tau-max-pi", delay.tau_max_pi, "Grid end (units of pi)");
    delay_app->add_option("--steps", delay.steps, "Grid points");

    SweepQubitsCmd qubits;
    auto* qubits_app = app.add_subcommand("sweep-qubits", "p_e(k_e) versus work-register size");
    add_instance_options(qubits_app, qubits.inst, false);
    qubits_app->add_option("--phase-convention", qubits.phys.convention)
        ->check(CLI::IsMember({"hamming", "imbalance"}));
    qubits_app->add_option("--conditioning", qubits.phys.conditioning,
                           "'averaged' or a fixed residue s");
    add_output_options(qubits_app, qubits.out, "csv");
    qubits_app->add_option("--L-min", qubits.L_min, "Smallest work register");
    qubits_app->add_option("--L-max", qubits.L_max, "Largest work register");
    qubits_app->add_option("--tau-delta-pi", qubits.tau_delta_pi, "tau*Delta in units of pi");
    qubits_app->add_option("--fit-out", qubits.fit_out,
                           "Fit sidecar path (default <out>.fit.json)");

    SweepSigmaCmd sigma;
    auto* sigma_app = app.add_subcommand("sweep-sigma", "Ensemble P_e under Gaussian splittings");
    add_instance_options(sigma_app, sigma.inst);
    add_output_options(sigma_app, sigma.out, "csv");
    sigma_app->add_option("--mean-delta", sigma.mean_delta, "Mean splitting <Delta>");
    sigma_app->add_option("--sigma-ratios", sigma.sigma_ratios, "sigma/<Delta> as fractions")
        ->delimiter(',');
    sigma_app->add_option("--orders", sigma.orders, "Matching orders n (<Delta> tau = 2 n pi)")
        ->delimiter(',');
    sigma_app->add_option("--offset-half-width-pi", sigma.offset_half_width_pi,
                          "Half-width of the tau*Delta grid around each matching point (pi)");
    sigma_app->add_option("--offset-points", sigma.offset_points,
                          "Grid points per matching point (1 = matching point only)");
    sigma_app->add_option("--samples", sigma.samples, "Ensemble size");
    sigma_app->add_option("--seed", sigma.seed, "Ensemble seed");
    sigma_app->add_option("--workers", sigma.workers, "Threads (0 = all cores)");
    sigma_app->add_option("--phase-convention", sigma.convention)
        ->check(CLI::IsMember({"hamming", "imbalance"}));
    sigma_app->add_option("--conditioning", sigma.conditioning, "'averaged' or a fixed residue s");
    sigma_app->add_option("--correct-set", sigma.correct_set)
        ->check(CLI::IsMember({"nearest", "cf"}));

    OracleCheckCmd oracle;
    auto* oracle_app =
        app.add_subcommand("oracle-check", "Compare closed form against state-vector simulation");
    add_instance_options(oracle_app, oracle.inst);
    add_physics_options(oracle_app, oracle.phys);
    add_output_options(oracle_app, oracle.out, "json");
    oracle_app->add_option("--tau-delta-pi", oracle.tau_delta_pi, "tau*Delta values (units of pi)")
        ->delimiter(',');
    oracle_app->add_option("--tau4-pi", oracle.tau4_pi, "Delay after the Fourier transform (pi)");
    oracle_app->add_option("--aux-delta", oracle.aux_delta, "Auxiliary-register splitting");
    oracle_app->add_option("--tolerance", oracle.tolerance, "Closed form vs oracle tolerance");
    oracle_app->add_option("--analytic-tolerance", oracle.analytic_tolerance,
                           "N=4 analytic formula tolerance");

    for (auto* sub : app.get_subcommands({})) sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!emit_config.empty()) {
            OutputFile cfg(emit_config);
            cfg.write(resolved_config(*app.get_subcommands().front()));
            cfg.commit();
        }
        if (order_app->parsed()) order.run();
        if (sizes_app->parsed()) sizes.run();
        if (dist_app->parsed()) dist.run();
        if (delay_app->parsed()) delay.run();
        if (qubits_app->parsed()) qubits.run();
        if (sigma_app->parsed()) sigma.run();
        if (oracle_app->parsed()) oracle.run();
    } catch (const UsageError& e) {
        std::cerr << "shordelay: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "shordelay: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
