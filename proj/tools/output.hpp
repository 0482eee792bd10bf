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
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shordelay::cli {

/// 12 significant digits, scientific, '.' separator regardless of locale.
std::string format_real(double v);

/// Parses "1.6", "-0.25", "5/3" (rational) into a double. Throws
/// std::invalid_argument on anything else.
double parse_real_or_ratio(const std::string& text);

using Cell = std::variant<std::int64_t, double>;

/// Column-named table with a metadata header, emitted as CSV or JSON.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Writes to `<path>.tmp` and renames into place on commit(); the temporary
/// is removed if the writer is destroyed uncommitted. "-" means stdout.
class OutputFile {
   public:
    explicit OutputFile(std::string path);
    ~OutputFile();
    OutputFile(const OutputFile&) = delete;
    OutputFile& operator=(const OutputFile&) = delete;

    void write(const std::string& text);
    void commit();

   private:
    std::string path_;
    std::filesystem::path tmp_;
    std::ofstream file_;
    bool committed_ = false;
};

}  // namespace shordelay::cli
