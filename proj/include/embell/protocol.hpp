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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "embell/bell.hpp"
#include "embell/gaussian_state.hpp"
#include "embell/system_params.hpp"

namespace embell {

/// Protocol durations are in units of 1/Gamma with Gamma = 4 g_max^2 / kappa_lc.
struct ProtocolConfig {
    SystemParams params;
    double tau1 = 0.5;     ///< entangling pulse, units of 1/Gamma
    double tau2 = 20.0;    ///< swap pulse, units of 1/Gamma
    double upsilon = 1.0;  ///< kappa_c / Gamma_sq during the entangling pulse

    std::vector<double> cooperativities;
    std::vector<double> lambdas;
    std::vector<double> n0s;

    /// Fixed settings for single runs; optimized when absent.
    std::optional<MeasurementSettings> settings;

    void validate() const;
};

inline constexpr double kMaxSqueezeTime = 4.0;  ///< upper bound on Gamma_sq tau1

struct ProtocolRun {
    GaussianState entangled;  ///< (m, A, B) after the entangling pulse
    GaussianState full;       ///< (m, A, B) at the end of the swap
    GaussianState ab;         ///< reduced state of the two cavity pulses
    /// max |Sigma_{m,(A,B)}| / max diag(Sigma): how far the mechanics fails to factor out.
    double mechanical_correlation = 0.0;
    double gamma = 0.0;  ///< Gamma in rad/s
    double M = 0.0;      ///< logistic rate of the swap schedule
};

/**
 * Initial state thermal(n0) (x) vac(A) (x) vac(B). Entangling pulse on (m, A)
 * with Gamma_sq = Gamma and kappa_c = upsilon Gamma for tau1; then the shaped
 * swap on (m, B) for tau2 with peak coupling Gamma. Mode A is frozen during
 * the swap and B during entangling.
 */
ProtocolRun run_protocol(const ProtocolConfig &cfg);

struct ProtocolSearchOptions {
    int restarts = 6;
    std::size_t max_evals = 150;  ///< per restart of the outer search
    double x_tol = 2e-3;          ///< on the box-normalized (tau1, tau2, upsilon)
    int inner_restarts = 2;       ///< settings restarts per outer step (plus warm start)
    int final_restarts = 12;      ///< settings restarts at the optimum
};

/// Outer simplex over (tau1, tau2, upsilon) with box bounds; inner settings search.
BellResult optimize_protocol(const ProtocolConfig &cfg, const ProtocolSearchOptions &opt = {});

/// Outer search box.
struct ProtocolBounds {
    double tau1_lo = 0.05, tau1_hi = kMaxSqueezeTime;
    double tau2_lo = 0.5, tau2_hi = 30.0;
    double upsilon_lo = 0.2, upsilon_hi = 10.0;
};

struct SweepRow {
    double cooperativity = 0.0;
    double lambda_t = 0.0;
    double n0 = 0.0;
    BellResult result;
    bool ok = false;
    std::string error;
};

using RowSink = std::function<void(const SweepRow &)>;

/**
 * Cartesian sweep over (C, lambda_t, n0), one optimize_protocol per cell.
 * Cells run on `threads` workers; rows reach `sink` in grid order as soon as
 * every earlier row is done. Failures are recorded in the row and the sweep continues.
 */
std::vector<SweepRow> sweep(const ProtocolConfig &cfg, int threads, const RowSink &sink = {},
                            const ProtocolSearchOptions &opt = {});

/// Parameters for one sweep cell (g_max chosen to hit the cooperativity).
SystemParams cell_params(const SystemParams &base, double cooperativity, double lambda_t, double n0);

}  // namespace embell
