// Copyright 2026 The dickenet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dickenet/cli.hpp"

namespace dickenet::cli {

namespace {

std::string cell_text(const io::Json &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return io::format_double(v.get<double>());
    }
    return v.dump();
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace

bool Report::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string Report::to_csv() const {
    std::string out;
    out += fmt::format("# {}\n", kVersion);
    out += fmt::format("# command: {}\n", command);
    out += fmt::format("# seed: {}\n", seed);
    for (const auto &[k, v] : config) {
        out += fmt::format("# config: {} = {}\n", k, v);
    }
    for (const auto &c : checks) {
        out += fmt::format("# check: {} {}{}\n", c.pass ? "PASS" : "FAIL", c.name,
                           c.detail.empty() ? "" : " (" + c.detail + ")");
    }
    out += fmt::format("# status: {}\n", passed() ? "PASS" : "FAIL");
    for (const auto &t : tables) {
        out += fmt::format("# table: {}\n", t.name);
        std::vector<std::string> cols;
        for (const auto &c : t.columns) {
            cols.push_back(csv_escape(c));
        }
        out += fmt::format("{}\n", fmt::join(cols, ","));
        for (const auto &row : t.rows) {
            std::vector<std::string> cells;
            for (const auto &v : row) {
                cells.push_back(csv_escape(cell_text(v)));
            }
            out += fmt::format("{}\n", fmt::join(cells, ","));
        }
    }
    return out;
}

std::string Report::to_json() const {
    io::Json j;
    io::Json cfg = io::Json::object();
    for (const auto &[k, v] : config) {
        cfg[k] = v;
    }
    j["header"] = {{"tool", std::string(kVersion)},
                   {"command", command},
                   {"seed", seed},
                   {"config", cfg}};
    io::Json checks_j = io::Json::array();
    for (const auto &c : checks) {
        checks_j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    j["checks"] = checks_j;
    j["status"] = passed() ? "PASS" : "FAIL";
    io::Json tables_j = io::Json::object();
    for (const auto &t : tables) {
        io::Json rows = io::Json::array();
        for (const auto &row : t.rows) {
            io::Json r = io::Json::object();
            for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) {
                r[t.columns[i]] = row[i];
            }
            rows.push_back(std::move(r));
        }
        tables_j[t.name] = std::move(rows);
    }
    j["tables"] = tables_j;
    j["results"] = results;
    return j.dump(2) + "\n";
}

} // namespace dickenet::cli
