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
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "dickenet/cli.hpp"

namespace dickenet::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string scalar_text(const io::Json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string out;
        for (const auto &e : v) {
            if (!out.empty()) {
                out += ",";
            }
            out += scalar_text(e);
        }
        return out;
    }
    if (v.is_object()) {
        throw ConfigError("config JSON nests deeper than section.key");
    }
    return v.dump();
}

void insert_unique(std::map<std::string, std::string> &out, std::string key,
                   std::string value) {
    if (out.contains(key)) {
        throw ConfigError(fmt::format("config key '{}' given twice", key));
    }
    out.emplace(std::move(key), std::move(value));
}

std::map<std::string, std::string> parse_json(std::string_view text) {
    io::Json j;
    try {
        j = io::Json::parse(text);
    } catch (const io::Json::parse_error &e) {
        throw ConfigError(fmt::format("config JSON: {}", e.what()));
    }
    if (!j.is_object()) {
        throw ConfigError("config JSON must be an object");
    }
    std::map<std::string, std::string> out;
    for (const auto &[section, body] : j.items()) {
        if (body.is_object()) {
            for (const auto &[key, value] : body.items()) {
                insert_unique(out, section + "." + key, scalar_text(value));
            }
        } else {
            insert_unique(out, section, scalar_text(body));
        }
    }
    return out;
}

std::map<std::string, std::string> parse_ini(std::string_view text) {
    std::map<std::string, std::string> out;
    std::string section;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(fmt::format("config line {}: bad section header", line_no));
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
        }
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(fmt::format("config line {}: empty key", line_no));
        }
        std::string full = section.empty() ? std::string(key)
                                           : section + "." + std::string(key);
        std::string_view value = line.substr(eq + 1);
        for (std::size_t i = 1; i < value.size(); ++i) {
            if ((value[i] == '#' || value[i] == ';') &&
                std::isspace(static_cast<unsigned char>(value[i - 1]))) {
                value = value.substr(0, i);
                break;
            }
        }
        insert_unique(out, std::move(full), std::string(trim(value)));
    }
    return out;
}

double parse_real(std::string_view s, const std::string &key) {
    s = trim(s);
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError(fmt::format("config key '{}': '{}' is not a number", key, s));
    }
    return v;
}

} // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    const std::string_view body = trim(text);
    if (!body.empty() && body.front() == '{') {
        return parse_json(body);
    }
    return parse_ini(text);
}

Config::Config(std::map<std::string, std::string> defaults,
               const std::map<std::string, std::string> &overrides)
    : values_(std::move(defaults)) {
    std::vector<std::string> unknown;
    for (const auto &[k, v] : overrides) {
        auto it = values_.find(k);
        if (it == values_.end()) {
            unknown.push_back(k);
        } else {
            it->second = v;
        }
    }
    if (!unknown.empty()) {
        throw ConfigError(fmt::format("unknown config key(s): {}", fmt::join(unknown, ", ")));
    }
}

std::string Config::str(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError(fmt::format("config key '{}' is not defined", key));
    }
    return it->second;
}

double Config::real(const std::string &key) const { return parse_real(str(key), key); }

std::int64_t Config::integer(const std::string &key) const {
    const std::string s(trim(str(key)));
    std::int64_t v = 0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(fmt::format("config key '{}': '{}' is not an integer", key, s));
    }
    return v;
}

std::vector<double> Config::reals(const std::string &key) const {
    const std::string s = str(key);
    std::vector<double> out;
    std::string_view rest = trim(s);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(parse_real(rest.substr(0, comma), key));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    return out;
}

void Config::set(const std::string &key, std::string value) {
    values_[key] = std::move(value);
}

} // namespace dickenet::cli
