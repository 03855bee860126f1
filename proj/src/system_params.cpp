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

#include "embell/system_params.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell {

namespace {

void require_nonnegative(const char *name, double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(fmt::format("{} must be a finite nonnegative number, got {}", name, value));
    }
}

}  // namespace

void SystemParams::validate() const {
    require_nonnegative("omega_m", omega_m);
    require_nonnegative("kappa_lc", kappa_lc);
    require_nonnegative("gamma_m", gamma_m);
    require_nonnegative("nbar", nbar);
    require_nonnegative("n0", n0);
    require_nonnegative("g_max", g_max);
    if (!(lambda_t >= 0.0 && lambda_t <= 1.0)) {
        throw InvalidArgument(fmt::format("lambda_t must lie in [0, 1], got {}", lambda_t));
    }
    if (!(kappa_lc > 0.0)) {
        throw InvalidArgument("kappa_lc must be positive");
    }
}

double SystemParams::epsilon() const {
    const double ratio = 4.0 * omega_m / kappa_lc;
    return 1.0 / (1.0 + ratio * ratio);
}

double SystemParams::scattering_rate(double g) const { return 4.0 * g * g / kappa_lc; }

double SystemParams::cooperativity() const {
    const double denom = kappa_lc * gamma_m * (nbar + 1.0);
    if (denom == 0.0) return g_max == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return 4.0 * g_max * g_max / denom;
}

bool SystemParams::weak_coupling() const { return g_max <= 0.1 * kappa_lc; }

double coupling_for_cooperativity(double cooperativity, double kappa_lc, double gamma_m,
                                  double nbar) {
    require_nonnegative("cooperativity", cooperativity);
    return std::sqrt(cooperativity * kappa_lc * gamma_m * (nbar + 1.0) / 4.0);
}

}  // namespace embell
