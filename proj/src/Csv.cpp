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
#include "qsens/Csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "qsens/Error.hpp"

namespace qsens::csv {

namespace {

std::vector<std::string> parseLine(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (quoted) {
        throw InvalidArgument("unterminated quote in CSV line");
    }
    out.push_back(std::move(cell));
    return out;
}

void writeLine(std::ostream &out, const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << escape(cells[i]);
    }
    out << '\n';
}

} // namespace

std::size_t Table::column(const std::string &name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw InvalidArgument("missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

bool Table::hasColumn(const std::string &name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

std::string formatDouble(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string formatOptional(const std::optional<double> &x) {
    return x ? formatDouble(*x) : std::string{};
}

std::string escape(const std::string &field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void writeTable(std::ostream &out, const Table &table) {
    for (const auto &[key, value] : table.metadata) {
        out << "# " << key << '=' << value << '\n';
    }
    writeLine(out, table.header);
    for (const auto &row : table.rows) {
        writeLine(out, row);
    }
}

Table readTable(std::istream &in) {
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!have_header) {
            if (line.starts_with('#')) {
                auto body = line.substr(1);
                body.erase(0, body.find_first_not_of(' '));
                const auto eq = body.find('=');
                if (eq == std::string::npos) {
                    table.metadata.emplace_back(body, "");
                } else {
                    table.metadata.emplace_back(body.substr(0, eq),
                                                body.substr(eq + 1));
                }
                continue;
            }
            if (line.empty()) {
                continue;
            }
            table.header = parseLine(line);
            have_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        auto cells = parseLine(line);
        if (cells.size() != table.header.size()) {
            throw InvalidArgument("CSV row has " + std::to_string(cells.size()) +
                                  " cells, header has " +
                                  std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) {
        throw InvalidArgument("CSV input has no header row");
    }
    return table;
}

double parseDouble(const std::string &s) {
    double value = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    return value;
}

std::optional<double> parseOptional(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parseDouble(s);
}

} // namespace qsens::csv
