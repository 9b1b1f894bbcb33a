// Copyright 2026 The qsens Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Minimal RFC 4180 table I/O. Leading lines starting with '#' carry
 * `key=value` metadata.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsens::csv {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Table {
    Metadata metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index; throws InvalidArgument when absent.
    [[nodiscard]] std::size_t column(const std::string &name) const;
    [[nodiscard]] bool hasColumn(const std::string &name) const;
};

/// Shortest representation that parses back to the same double.
[[nodiscard]] std::string formatDouble(double x);
[[nodiscard]] std::string formatOptional(const std::optional<double> &x);

/// Quotes a field when it contains a comma, quote or newline.
[[nodiscard]] std::string escape(const std::string &field);

void writeTable(std::ostream &out, const Table &table);
[[nodiscard]] Table readTable(std::istream &in);

[[nodiscard]] double parseDouble(const std::string &s);
[[nodiscard]] std::optional<double> parseOptional(const std::string &s);

} // namespace qsens::csv
