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

#include <complex>
#include <functional>
#include <ostream>
#include <vector>

namespace embell {

/**
 * Time profiles of the swap coupling Gamma_bs(t) and the receiving cavity's
 * linewidth kappa_c(t) on [0, tau2], together with their running integrals.
 */
struct PulseSchedule {
    using Profile = std::function<double(double)>;

    double tau2 = 0.0;
    double M = 0.0;  ///< logistic rate; 0 for non-logistic schedules
    Profile gamma_bs;
    Profile kappa_c;
    Profile gamma_bs_integral;  ///< int_0^t gamma_bs
    Profile kappa_c_integral;   ///< int_0^t kappa_c
    double K_v = 0.0;           ///< int_0^tau2 gamma_bs
    double K_w = 0.0;           ///< int_0^tau2 kappa_c
    std::vector<double> breakpoints;
};

/**
 * Optimal swap shapes
 *   Gamma_bs(t) = M / (1 + e^{-M (t - tau2/2)}),  kappa_c(t) = M / (1 + e^{M (t - tau2/2)}).
 * These solve dGamma/dt = kappa Gamma, dkappa/dt = -kappa Gamma with
 * Gamma_bs(tau2) = kappa_c(0), which makes the emitted and absorbed mode
 * functions identical; K_v = K_w = M tau2 / 2.
 */
PulseSchedule optimal_shapes(double tau2, double M);

/// M such that the peak coupling Gamma_bs(tau2) = M / (1 + e^{-M tau2 / 2}) equals gamma_max.
double solve_M(double gamma_max, double tau2);

PulseSchedule constant_schedule(double tau2, double gamma_bs, double kappa_c);

/// Equal-width piecewise-constant levels on [0, tau2].
PulseSchedule piecewise_constant_schedule(double tau2, std::vector<double> gamma_levels,
                                          std::vector<double> kappa_levels);

/// I = [int_0^tau2 sqrt(Gamma kappa) e^{-1/2 int_t^tau2 kappa} e^{-1/2 int_0^t Gamma} dt]^2,
/// adaptive Gauss-Kronrod to 1e-10 relative.
double transfer_fidelity(const PulseSchedule &schedule);

struct ClassicalTransfer {
    std::complex<double> beta;  ///< mechanical amplitude at tau2
    std::complex<double> xi;    ///< cavity amplitude at tau2
};

/// Integrates beta' = -Gamma beta / 2, xi' = -kappa xi / 2 - i sqrt(Gamma kappa) beta
/// from xi(0) = 0 up to `until` (defaults to tau2).
ClassicalTransfer classical_transfer_sim(const PulseSchedule &schedule, std::complex<double> beta0,
                                         double until = -1.0);

/// CSV with header "t,gamma_bs,kappa_c" at `samples` equally spaced times.
void write_schedule_csv(std::ostream &out, const PulseSchedule &schedule, int samples = 201);

}  // namespace embell
