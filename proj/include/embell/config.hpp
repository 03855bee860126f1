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

#include <cstdint>
#include <string>
#include <string_view>

#include "embell/protocol.hpp"

namespace embell {

/**
 * Configuration files are JSON objects with sections
 *
 *   system:   omega_m [rad/s], kappa_lc_over_omega_m, gamma_m [rad/s] or Q,
 *             nbar, n0, lambda_t, cooperativity or g_max [rad/s]
 *   protocol: tau1, tau2 [units of 1/Gamma], upsilon           (optional)
 *   settings: alpha1, alpha2, beta1, beta2 as [re, im]          (optional)
 *   sweep:    cooperativity, lambda_t, n0 as arrays             (optional)
 *
 * A sweep axis makes the matching system key optional. Unknown keys, wrong
 * types, missing keys and out-of-range values raise ConfigError with the
 * dotted key path.
 */
ProtocolConfig parse_config_text(std::string_view text);
ProtocolConfig parse_config(const std::string &path);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string config_hash(std::string_view bytes);

enum class RunMode { Single, Optimize, Sweep, Validate };

RunMode parse_mode(std::string_view name);
std::string_view mode_name(RunMode mode);

struct RunConfig {
    RunMode mode = RunMode::Single;
    std::string config_path;  ///< not needed for validate
    std::string out_dir;      ///< empty: EMBELL_OUT_DIR, then "."
    std::uint64_t seed = 0;
    int threads = 1;
};

}  // namespace embell
