// Copyright 2026 The embell Authors
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

#include <algorithm>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "embell/app.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Bell-test simulations for electromechanical entanglement"};
    app.set_version_flag("--version", embell::version());

    std::string mode = "single";
    embell::RunConfig config;
    config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    app.add_option("--config", config.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "single, optimize, sweep or validate")
        ->check(CLI::IsMember({"single", "optimize", "sweep", "validate"}));
    app.add_option("--out", config.out_dir, "output directory (default: $EMBELL_OUT_DIR or .)");
    app.add_option("--seed", config.seed, "seed for randomized validation grids");
    app.add_option("--threads", config.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    config.mode = embell::parse_mode(mode);
    if (config.mode != embell::RunMode::Validate && config.config_path.empty()) {
        std::cerr << "--config is required for mode " << mode << '\n';
        return embell::kExitConfigError;
    }
    return embell::run(config, std::cerr);
}
