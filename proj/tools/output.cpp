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

#include "output.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace shordelay::cli {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 11);
    return std::string(buf, res.ptr);
}

namespace {

double parse_plain(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || text.empty()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

std::string cell_text(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return format_real(std::get<double>(c));
}

}  // namespace

double parse_real_or_ratio(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_plain(text);
    const double num = parse_plain(text.substr(0, slash));
    const double den = parse_plain(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
}

std::string Table::to_csv() const {
    std::string out;
    if (!metadata.empty()) {
        out += "# ";
        for (std::size_t i = 0; i < metadata.size(); ++i) {
            if (i) out += ", ";
            out += metadata[i].first + "=" + metadata[i].second;
        }
        out += '\n';
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    doc["metadata"] = meta;
    doc["columns"] = columns;
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const auto* i = std::get_if<std::int64_t>(&c)) {
                r.push_back(*i);
            } else {
                r.push_back(std::get<double>(c));
            }
        }
        rows_json.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows_json);
    return doc.dump(2) + "\n";
}

OutputFile::OutputFile(std::string path) : path_(std::move(path)) {
    if (path_ == "-") return;
    tmp_ = std::filesystem::path(path_ + ".tmp");
    file_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open '" + tmp_.string() + "' for writing");
}

OutputFile::~OutputFile() {
    if (path_ == "-" || committed_) return;
    file_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
}

void OutputFile::write(const std::string& text) {
    if (path_ == "-") {
        std::cout << text;
        return;
    }
    file_ << text;
    if (!file_) throw std::runtime_error("write to '" + tmp_.string() + "' failed");
}

void OutputFile::commit() {
    if (path_ == "-") {
        std::cout.flush();
        committed_ = true;
        return;
    }
    file_.close();
    if (!file_) throw std::runtime_error("closing '" + tmp_.string() + "' failed");
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
}

}  // namespace shordelay::cli
