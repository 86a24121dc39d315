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

/**
 * @file
 * Scenario runner behind the dickenet command-line tool.
 *
 * Config files are INI-style (`[section]` headers, `key = value` lines, `#`
 * or `;` comments) and flatten to `section.key`. A file whose first
 * non-blank character is `{` is read as JSON with the same two-level shape.
 * Every command has a fixed key schema with defaults; unknown keys are
 * rejected.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dickenet/io.hpp"
#include "dickenet/register.hpp"

namespace dickenet::cli {

inline constexpr std::string_view kVersion = "dickenet 0.1.0";

class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Flattened `section.key -> value` map from INI or JSON text.
[[nodiscard]] std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Effective configuration: a command's defaults overlaid with file values.
class Config {
  public:
    Config(std::map<std::string, std::string> defaults,
           const std::map<std::string, std::string> &overrides);

    [[nodiscard]] const std::map<std::string, std::string> &values() const noexcept {
        return values_;
    }
    [[nodiscard]] std::string str(const std::string &key) const;
    [[nodiscard]] double real(const std::string &key) const;
    [[nodiscard]] std::int64_t integer(const std::string &key) const;
    /// Comma-separated reals; empty string gives an empty list.
    [[nodiscard]] std::vector<double> reals(const std::string &key) const;
    void set(const std::string &key, std::string value);

  private:
    std::map<std::string, std::string> values_;
};

struct RunOptions {
    std::optional<std::filesystem::path> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format; ///< "csv" or "json"
    std::optional<std::filesystem::path> out;
    bool regen_fixtures = false;
    std::filesystem::path fixture_dir;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<io::Json>> rows; ///< strings, numbers, bools or null
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::vector<Check> checks;
    std::vector<Table> tables;
    io::Json results = io::Json::object();

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] std::string to_json() const;
};

[[nodiscard]] Report cmd_resource_check(const Config &c, const RunOptions &o);
[[nodiscard]] Report cmd_qtc_sweep(const Config &c, const RunOptions &o);
[[nodiscard]] Report cmd_odt_table(const Config &c, const RunOptions &o);
[[nodiscard]] Report cmd_witness_scan(const Config &c, const RunOptions &o);
[[nodiscard]] Report cmd_tomography_demo(const Config &c, const RunOptions &o);

[[nodiscard]] const std::vector<std::string> &command_names();

/// Default schema of a command, including run.seed and output.format.
[[nodiscard]] std::map<std::string, std::string> default_config(const std::string &command);

struct CommandOutput {
    std::string text;        ///< the rendered report, empty on config errors
    std::optional<std::filesystem::path> out_path; ///< from --out or output.path
    std::string diagnostics; ///< messages meant for stderr
    int exit_code = 0;       ///< 0 pass, 1 check failure, 2 config error
};

/// Loads the config, runs the command and renders the report.
[[nodiscard]] CommandOutput run_command(const std::string &command,
                                        const RunOptions &options);

} // namespace dickenet::cli
