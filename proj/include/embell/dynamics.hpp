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
#include <string>
#include <vector>

#include "embell/gaussian_state.hpp"
#include "embell/system_params.hpp"

namespace embell {

using RateProfile = std::function<double(double)>;

/**
 * Drift F and diffusion N of the Lyapunov equation dSigma/dt = F Sigma + Sigma F^T + N.
 *
 * Constant generators hold F and N directly. Time-dependent generators carry an
 * evaluator; `drift`/`diffusion` then hold the values at t = 0.
 */
struct GeneratorPair {
    using Evaluator = std::function<void(double t, Matrix &drift, Matrix &diffusion)>;

    Matrix drift;
    Matrix diffusion;
    Evaluator evaluator;
    std::vector<double> breakpoints;
    std::vector<std::string> warnings;

    bool time_dependent() const { return static_cast<bool>(evaluator); }
    Eigen::Index dim() const { return drift.rows(); }
    void at(double t, Matrix &f, Matrix &n) const;
};

/// Blue-sideband (entangling) generators over (mechanics, cavity); transcribed
/// 4x4 matrices with Gamma~ = (1 + eps) Gamma_sq + gamma_m (2 nbar + 1).
GeneratorPair build_blue_generators(const SystemParams &p, double gamma_sq, double kappa_c);

/// Red-sideband (swap) drift and diffusion at fixed rates; over (mechanics, cavity).
void red_generators_at(const SystemParams &p, double gamma_bs, double kappa_c, Matrix &drift,
                       Matrix &diffusion);

/// Time-dependent red-sideband generators. Profiles are sampled on [0, horizon]
/// and must be nonnegative there (InvalidProfile otherwise).
GeneratorPair build_red_generators(const SystemParams &p, RateProfile gamma_bs,
                                   RateProfile kappa_c, double horizon,
                                   std::vector<double> breakpoints = {});

/**
 * Full three-mode model over (mechanics, LC, cascaded cavity), in the frame of
 * the drive: H = w_m m^dag m - Delta (l^dag l + c^dag c) + g (l + l^dag)(m + m^dag),
 * LC decay kappa_lc, cavity decay kappa_c, mechanical thermal contact and the
 * cascaded LC -> cavity coupling with efficiency lambda_t. No rotating-wave
 * approximation on the coupling.
 */
GeneratorPair build_full_generators(const SystemParams &p, double detuning, double g,
                                    double kappa_c);

/// Time-dependent coupling g(t). Warns (GeneratorPair::warnings) when the
/// relative rate of change |g'/g| exceeds max(kappa_lc, |Delta|)/10 on [0, horizon].
GeneratorPair build_full_generators(const SystemParams &p, double detuning,
                                    std::function<double(double)> g, double kappa_c,
                                    double horizon);

/// Generic construction from a quadratic Hamiltonian and linear jump operators.
/// H = X^T G X / 2 for the quadrature vector X; each jump operator is L = c^T X.
struct LindbladModel {
    std::size_t n_modes = 0;
    Matrix hamiltonian;  ///< real symmetric G
    std::vector<Eigen::VectorXcd> jumps;

    explicit LindbladModel(std::size_t n);

    /// Adds coef * (u.X)(v.X) + h.c. to the Hamiltonian.
    void add_hamiltonian(Complex coef, const Eigen::VectorXcd &u, const Eigen::VectorXcd &v);
    /// Adds the dissipator rate * D[c.X].
    void add_jump(double rate, const Eigen::VectorXcd &c);
};

/// Quadrature coefficients of a_k (so that a_k = annihilator(n, k) . X).
Eigen::VectorXcd annihilator(std::size_t n_modes, std::size_t k);
Eigen::VectorXcd creator(std::size_t n_modes, std::size_t k);

/// F = Omega (G + Im M), N = Omega Re(M) Omega^T with M = sum_j conj(c_j) c_j^T.
void lindblad_to_lyapunov(const LindbladModel &model, Matrix &drift, Matrix &diffusion);
GeneratorPair generators_from_lindblad(const LindbladModel &model);

/// Place generators acting on `modes` (indices into a larger register) into an
/// n_modes-mode register. Modes not listed have zero drift and diffusion.
GeneratorPair embed_generators(const GeneratorPair &gen, std::vector<std::size_t> modes,
                               std::size_t n_modes);

/**
 * Propagate Sigma over `duration`.
 *
 * Constant generators use the closed-form solution
 *   Sigma(t+h) = Phi Sigma Phi^T + Q, Phi = e^{Fh}, Q = int_0^h e^{Fs} N e^{F^T s} ds,
 * evaluated by a block matrix exponential with h <= dt_max (and small enough that
 * the exponential stays well conditioned). Time-dependent generators use RK4 with
 * step-doubling error control at 1e-10. Output is symmetrized after every step.
 *
 * Throws DivergenceError (carrying the time) on non-finite entries.
 */
GaussianState propagate(const GaussianState &state, const GeneratorPair &gen, double duration,
                        double dt_max);

/// Affine map Sigma -> phi Sigma phi^T + q produced by a Lyapunov evolution.
struct LinearMap {
    Matrix phi;
    Matrix q;
};

/**
 * The map taking Sigma(0) to Sigma(duration), independent of the initial state.
 * Constant generators use the same block exponential as propagate; time-dependent
 * ones integrate phi' = F phi, q' = F q + q F^T + N with the RK4 controller.
 */
LinearMap propagator(const GeneratorPair &gen, double duration, double dt_max);

/// Apply a map acting on `modes` of `state`; all other covariance blocks among
/// the remaining modes are left untouched (bit for bit).
GaussianState apply_map(const GaussianState &state, const LinearMap &map,
                        const std::vector<std::size_t> &modes);

struct AdiabaticComparison {
    Matrix full;       ///< (mechanics, cavity) block of the full model, rotated into the adiabatic frame
    Matrix adiabatic;  ///< blue-sideband adiabatic model
    double max_relative_error = 0.0;  ///< max |full - adiabatic| / max |adiabatic|
};

/**
 * Runs the full three-mode model with blue detuning Delta = omega_m and constant
 * coupling g next to the adiabatic blue model with Gamma_sq = 4 g^2 / kappa_lc,
 * both from thermal(n0) (x) vacuum, for `duration`. The full result is rotated
 * by the free mechanical and cavity phases before comparison.
 */
AdiabaticComparison compare_full_to_adiabatic(const SystemParams &p, double g, double kappa_c,
                                              double duration);

/// Largest negative eigenvalue magnitude tolerated for a diffusion matrix.
inline constexpr double kDiffusionTolerance = 1e-10;
bool is_valid_diffusion(const Matrix &diffusion, double tol = kDiffusionTolerance);

}  // namespace embell
