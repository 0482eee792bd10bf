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

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SHORDELAY_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::string meta;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        REQUIRE(it != header.end());
        return static_cast<std::size_t>(it - header.begin());
    }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            csv.meta = line;
        } else if (csv.header.empty()) {
            csv.header = split(line);
        } else {
            std::vector<double> row;
            for (const auto& cell : split(line)) row.push_back(std::stod(cell));
            csv.rows.push_back(row);
        }
    }
    return csv;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("shordelay_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

double max_of(const Csv& csv, std::size_t c) {
    double m = -1.0;
    for (const auto& r : csv.rows) m = std::max(m, r[c]);
    return m;
}

}  // namespace

TEST_CASE("order and sizes") {
    auto r = run("order -N 21 -a 5");
    REQUIRE(r.status == 0);
    auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"N", "a", "r"});
    CHECK(csv.rows.at(0)[2] == 6);

    r = run("sizes -N 21");
    REQUIRE(r.status == 0);
    csv = parse_csv(r.out);
    CHECK(csv.rows.at(0) == std::vector<double>{21, 9, 5, 512});

    CHECK(run("--version").out.find("0.1.0") != std::string::npos);
}

TEST_CASE("distribution: peak height at the matching point") {
    const auto r = run("distribution -N 21 -a 5 --L 9 --tau-delta-pi 2");
    REQUIRE(r.status == 0);
    const auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"tau_delta", "k", "P"});
    CHECK(csv.rows.size() == 512);
    const double peak = max_of(csv, csv.col("P"));
    CHECK(peak >= 0.15);
    CHECK(peak <= 0.22);
    CHECK(csv.meta.rfind("# instance=N21-a5-L9-Lp5-r6, seed=0, version=0.1.0", 0) == 0);
}

TEST_CASE("distribution: tau*Delta = 0 and 2 pi agree to 12 decimals") {
    const auto a = parse_csv(run("distribution -N 21 -a 5 --tau-delta-pi 0").out);
    const auto b = parse_csv(run("distribution -N 21 -a 5 --tau-delta-pi 2").out);
    REQUIRE(a.rows.size() == b.rows.size());
    auto fixed = [](const Csv& c) {
        std::string s;
        char buf[64];
        for (const auto& row : c.rows) {
            std::snprintf(buf, sizeof buf, "%.12f\n", row[2]);
            s += buf;
        }
        return s;
    };
    CHECK(fixed(a) == fixed(b));
}

TEST_CASE("distribution: off-matching magnitudes at tau*Delta = pi [off-peak-bound]") {
    const auto r = run("distribution -N 21 -a 5 --L 9 --tau-delta-pi 1");
    REQUIRE(r.status == 0);
    const auto csv = parse_csv(r.out);
    const double peak = max_of(csv, csv.col("P"));
    INFO("max P(k) at tau*Delta = pi: " << peak);
    CHECK(peak < 0.02);
}

TEST_CASE("sweep-delay for N = 15") {
    const auto r = run("sweep-delay -N 15 -a 13 --L 4");
    REQUIRE(r.status == 0);
    const auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"tau_delta", "Pe"});
    REQUIRE(csv.rows.size() == 401);
    bool saw_two = false;
    bool saw_one = false;
    for (const auto& row : csv.rows) {
        if (std::fabs(row[0] - 2.0) < 1e-12) {
            saw_two = true;
            CHECK(std::fabs(row[1] - 1.0) < 1e-9);
        }
        if (std::fabs(row[0] - 1.0) < 1e-12) {
            saw_one = true;
            CHECK(row[1] <= 1e-9);
        }
    }
    CHECK(saw_two);
    CHECK(saw_one);
}

TEST_CASE("sweep-delay for N = 33 peaks at 2 pi") {
    const auto r = run("sweep-delay -N 33 -a 5 --L 11");
    REQUIRE(r.status == 0);
    const auto csv = parse_csv(r.out);
    double at_two = -1.0;
    for (const auto& row : csv.rows) {
        if (std::fabs(row[0] - 2.0) < 1e-12) at_two = row[1];
    }
    REQUIRE(at_two >= 0.0);
    CHECK(at_two == max_of(csv, 1));
}

TEST_CASE("sweep-qubits with fit sidecar") {
    TempDir dir;
    const auto out = dir / "decay.csv";
    REQUIRE(run("sweep-qubits -N 15 -a 13 --out " + out).status == 0);
    const auto csv = parse_csv(slurp(out));
    CHECK(csv.header == std::vector<std::string>{"L", "k_e", "p_e"});
    std::vector<double> l4;
    for (const auto& row : csv.rows) {
        if (row[0] == 4) l4.push_back(row[1]);
    }
    CHECK(l4 == std::vector<double>{0, 4, 8, 12});
    const auto fit = nlohmann::json::parse(slurp(out + ".fit.json"));
    CHECK(fit.at("slope").get<double>() < 0.0);
    CHECK(fit.at("r_squared").get<double>() > 0.99);

    const auto matched = parse_csv(run("sweep-qubits -N 15 -a 13 --tau-delta-pi 2").out);
    REQUIRE(matched.rows.size() == 20);
    for (const auto& row : matched.rows) CHECK(std::fabs(row[2] - 0.25) < 1e-9);
}

TEST_CASE("sweep-sigma ordinals") {
    auto r = run("sweep-sigma -N 15 -a 13 --L 8 --sigma-ratios 0 --orders 1,2 --offset-points 1 "
                 "--samples 20");
    REQUIRE(r.status == 0);
    auto csv = parse_csv(r.out);
    CHECK(csv.header ==
          std::vector<std::string>{"n", "sigma_ratio", "tau_delta", "Pe_mean", "Pe_stderr"});
    for (const auto& row : csv.rows) CHECK(row[4] == 0.0);

    r = run("sweep-sigma -N 15 -a 13 --L 8 --sigma-ratios 0.005 --orders 1,4 --offset-points 1");
    REQUIRE(r.status == 0);
    csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][3] > csv.rows[1][3]);

    r = run("sweep-sigma -N 15 -a 13 --L 8 --sigma-ratios 0.0001,0.011 --offset-points 1");
    REQUIRE(r.status == 0);
    csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][3] > csv.rows[1][3]);

    const auto grid = parse_csv(run("sweep-sigma -N 15 -a 13 --L 6 --sigma-ratios 0.01 "
                                    "--samples 5").out);
    CHECK(grid.rows.size() == 81);
    CHECK(grid.rows.front()[2] == doctest::Approx(1.8));
    CHECK(grid.rows.back()[2] == doctest::Approx(2.2));
}

TEST_CASE("oracle-check reports") {
    auto r = run("oracle-check -N 15 -a 13 --L 4");
    REQUIRE(r.status == 0);
    auto report = nlohmann::json::parse(r.out);
    CHECK(report.at("pass").get<bool>());
    CHECK(report.at("max_deviation").get<double>() < 1e-10);

    r = run("oracle-check -N 4 -a 3 --L 2 --Lprime 2");
    REQUIRE(r.status == 0);
    report = nlohmann::json::parse(r.out);
    CHECK(report.at("pass").get<bool>());
    CHECK(report.at("analytic_max_deviation").get<double>() < 1e-12);

    r = run("oracle-check -N 21 -a 5 --L 9 --tau-delta-pi 1");
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).at("max_deviation").get<double>() < 1e-10);
}

TEST_CASE("exit codes and partial files") {
    CHECK(run("").status == 1);
    CHECK(run("order -a 2").status == 1);
    CHECK(run("order -N 15 -a 5").status == 1);
    CHECK(run("distribution -N 15 -a 13 --phase-convention eq6").status == 1);
    CHECK(run("distribution -N 16 -a 3").status == 1);

    TempDir dir;
    const auto out = dir / "never.csv";
    CHECK(run("distribution -N 15 -a 13 --L 1 --conditioning 3 --out " + out).status == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(fs::is_empty(dir.path));

    std::ofstream(dir / "keep.csv") << "previous\n";
    CHECK(run("distribution -N 15 -a 13 --L 1 --conditioning 3 --out " + (dir / "keep.csv")).status == 2);
    CHECK(slurp(dir / "keep.csv") == "previous\n");
}

TEST_CASE("config round trip reproduces the output bytes") {
    TempDir dir;
    const auto cfg = dir / "run.ini";
    const auto first = dir / "first.csv";
    const auto second = dir / "second.csv";
    REQUIRE(run("--emit-config " + cfg + " sweep-delay -N 21 -a 5 --splitting gaussian --sigma 0.01 "
                "--seed 9 --steps 17 --tau-max-pi 2 --out " + first).status == 0);
    REQUIRE(fs::exists(cfg));
    REQUIRE(run("--config " + cfg + " sweep-delay --out " + second).status == 0);
    CHECK(slurp(first) == slurp(second));

    const auto third = dir / "third.csv";
    REQUIRE(run("--config " + cfg + " sweep-delay --steps 3 --out " + third).status == 0);
    CHECK(parse_csv(slurp(third)).rows.size() == 3);
}

TEST_CASE("CSV formatting is locale independent") {
    const auto r = run("sweep-delay -N 15 -a 13 --steps 5");
    REQUIRE(r.status == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    const std::regex number(R"(-?\d\.\d{11}e[+-]\d{2,3})");
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    while (std::getline(ss, line)) {
        for (const auto& cell : split(line)) CHECK(std::regex_match(cell, number));
    }
    const auto json = nlohmann::json::parse(run("sweep-delay -N 15 -a 13 --steps 5 --format json").out);
    CHECK(json.at("columns").size() == 2);
    CHECK(json.at("rows").size() == 5);
}
