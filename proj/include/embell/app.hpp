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

#pragma once

#include <ostream>
#include <string>

#include "embell/config.hpp"

namespace embell {

/// Exit codes of `run`.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,         ///< validation check failed or sweep cell failed
    kExitConfigError = 2,
    kExitNumericalError = 3,
    kExitInternalError = 4,
};

std::string version();

/// Output directory: explicit value, else $EMBELL_OUT_DIR, else ".".
std::string resolve_out_dir(const std::string &explicit_dir);

/**
 * Executes one run. Writes result.csv / result.json (single, optimize, sweep),
 * schedule.csv (single, optimize) or validation.csv / validation.json. On an
 * exception writes error.json with type, message and key path, and returns a
 * nonzero exit code. Progress lines go to `log`.
 */
int run(const RunConfig &config, std::ostream &log);

}  // namespace embell
