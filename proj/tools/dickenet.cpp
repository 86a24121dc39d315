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
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dickenet/cli.hpp"

#ifndef DICKENET_FIXTURE_DIR
#define DICKENET_FIXTURE_DIR "fixtures"
#endif

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"resource-check", "Build D4(2) from the source state and characterize it"},
    {"qtc-sweep", "Clone fidelity over theta, ideal and noisy"},
    {"odt-table", "Open-destination teleportation over the configuration table"},
    {"witness-scan", "Biseparable bound b4 and collective-spin witness over gamma"},
    {"tomography-demo", "Shot-noise tomography of a one- or two-qubit state"},
};

} // namespace

int main(int argc, char **argv) {
    namespace cli = dickenet::cli;

    CLI::App app{"Four-qubit Dicke-resource protocol simulator", "dickenet"};
    app.set_version_flag("--version", std::string(cli::kVersion));
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    std::uint64_t seed = 0;
    bool regen = false;
    std::string fixture_dir = DICKENET_FIXTURE_DIR;
    if (const char *env = std::getenv("DICKENET_FIXTURES")) {
        fixture_dir = env;
    }

    for (const auto &name : cli::command_names()) {
        auto *sub = app.add_subcommand(name, kDescriptions.at(name));
        sub->add_option("--config", config_path, "INI or JSON scenario file");
        sub->add_option("--seed", seed, "base seed for every stochastic step");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--regen-fixtures", regen, "rewrite the golden fixtures this command uses");
        sub->add_option("--fixtures", fixture_dir, "fixture directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    auto *sub = app.get_subcommand(command);
    cli::RunOptions opts;
    if (sub->count("--config") > 0) {
        opts.config_path = config_path;
    }
    if (sub->count("--seed") > 0) {
        opts.seed = seed;
    }
    if (sub->count("--format") > 0) {
        opts.format = format;
    }
    if (sub->count("--out") > 0) {
        opts.out = out_path;
    }
    opts.regen_fixtures = regen;
    opts.fixture_dir = fixture_dir;

    const cli::CommandOutput result = cli::run_command(command, opts);
    std::cerr << result.diagnostics;
    if (!result.text.empty()) {
        if (result.out_path) {
            std::ofstream out(*result.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << result.out_path->string() << "\n";
                return 2;
            }
            out << result.text;
        } else {
            std::cout << result.text;
        }
    }
    return result.exit_code;
}
