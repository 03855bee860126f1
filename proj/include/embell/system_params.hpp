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

namespace embell {

/// Physical parameters of the electromechanical setup. All rates in rad/s.
struct SystemParams {
    double omega_m = 0.0;   ///< mechanical angular frequency
    double kappa_lc = 0.0;  ///< LC circuit energy decay rate
    double gamma_m = 0.0;   ///< mechanical FWHM damping rate
    double nbar = 0.0;      ///< thermal bath occupation
    double n0 = 0.0;        ///< initial mechanical occupation
    double lambda_t = 1.0;  ///< transmission efficiency
    double g_max = 0.0;     ///< peak linearized coupling

    /// Throws InvalidArgument on negative rates, lambda_t outside [0,1], etc.
    void validate() const;

    /// Off-resonant sideband suppression 1 / (1 + (4 omega_m / kappa_lc)^2).
    double epsilon() const;

    /// Adiabatic scattering rate 4 g^2 / kappa_lc.
    double scattering_rate(double g) const;
    double gamma_max() const { return scattering_rate(g_max); }

    /// 4 g_max^2 / (kappa_lc gamma_m (nbar + 1)).
    double cooperativity() const;

    /// g_max / kappa_lc <= 0.1
    bool weak_coupling() const;
};

/// Coupling g such that 4 g^2 / (kappa_lc gamma_m (nbar + 1)) equals `cooperativity`.
double coupling_for_cooperativity(double cooperativity, double kappa_lc, double gamma_m,
                                  double nbar);

}  // namespace embell
