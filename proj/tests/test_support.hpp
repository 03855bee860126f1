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

#include <cmath>
#include <random>

#include "embell/gaussian_state.hpp"
#include "embell/system_params.hpp"

namespace embell::testing {

inline constexpr double kOmegaM = 2.0 * 3.14159265358979323846 * 10e6;

/// n0 = 0.1, nbar = 40, kappa_lc = omega_m / 8, Q = 3e6, lambda_t = 1, C = 100.
inline SystemParams baseline_params() {
    SystemParams p;
    p.omega_m = kOmegaM;
    p.kappa_lc = kOmegaM / 8.0;
    p.gamma_m = kOmegaM / 3e6;
    p.nbar = 40.0;
    p.n0 = 0.1;
    p.lambda_t = 1.0;
    p.g_max = coupling_for_cooperativity(100.0, p.kappa_lc, p.gamma_m, p.nbar);
    return p;
}

inline double max_abs_diff(const Matrix &a, const Matrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Random symplectic matrix: passive rotation, single-mode squeezers, passive rotation.
inline Matrix random_symplectic(std::size_t n_modes, std::mt19937_64 &rng, double max_squeeze) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> sq(0.0, max_squeeze);
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    auto passive = [&] {
        // Beam splitters between neighbouring modes plus phase shifts.
        Matrix u = Matrix::Identity(dim, dim);
        for (std::size_t k = 0; k < n_modes; ++k) u = mode_rotation(n_modes, k, phase(rng)) * u;
        for (std::size_t k = 0; k + 1 < n_modes; ++k) {
            const double t = phase(rng);
            Matrix bs = Matrix::Identity(dim, dim);
            const auto i = static_cast<Eigen::Index>(2 * k);
            for (Eigen::Index q = 0; q < 2; ++q) {
                bs(i + q, i + q) = std::cos(t);
                bs(i + 2 + q, i + 2 + q) = std::cos(t);
                bs(i + q, i + 2 + q) = std::sin(t);
                bs(i + 2 + q, i + q) = -std::sin(t);
            }
            u = bs * u;
        }
        for (std::size_t k = 0; k < n_modes; ++k) u = mode_rotation(n_modes, k, phase(rng)) * u;
        return u;
    };
    Matrix squeeze = Matrix::Identity(dim, dim);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double r = sq(rng);
        squeeze(2 * k, 2 * k) = std::exp(-r);
        squeeze(2 * k + 1, 2 * k + 1) = std::exp(r);
    }
    return passive() * squeeze * passive();
}

/// Random physical zero-mean state S diag(nu) S^T with symplectic eigenvalues nu >= 1/2.
inline GaussianState random_physical_state(std::size_t n_modes, std::mt19937_64 &rng,
                                           double max_squeeze = 1.5, double max_thermal = 2.0) {
    std::uniform_real_distribution<double> th(0.0, max_thermal);
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    Vector nu(dim);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double n = 0.5 + th(rng);
        nu(2 * k) = n;
        nu(2 * k + 1) = n;
    }
    const Matrix s = random_symplectic(n_modes, rng, max_squeeze);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < n_modes; ++k) labels.push_back(n_modes == 2 ? (k == 0 ? "A" : "B") : "q" + std::to_string(k));
    return GaussianState(labels, Vector::Zero(dim), s * nu.asDiagonal() * s.transpose());
}

}  // namespace embell::testing
