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

#include "embell/validation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "embell/bell.hpp"
#include "embell/dynamics.hpp"
#include "embell/oracle/fock.hpp"
#include "embell/oracle/lyapunov_closed_form.hpp"
#include "embell/pulse_shaping.hpp"

namespace embell {

namespace {

ValidationCheck below(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

// Random physical two-mode state: a two-mode squeezed state with extra local
// thermal noise and random local phases.
GaussianState random_two_mode_state(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GaussianState s = two_mode_squeezed_state(1.5 * u(rng), 2.0 * std::numbers::pi * u(rng));
    Matrix cov = s.cov();
    cov.topLeftCorner<2, 2>() += 0.5 * u(rng) * Matrix::Identity(2, 2);
    cov.bottomRightCorner<2, 2>() += 0.5 * u(rng) * Matrix::Identity(2, 2);
    s = s.with_cov(cov);
    s = rotate_mode(s, "A", 2.0 * std::numbers::pi * u(rng));
    return rotate_mode(s, "B", 2.0 * std::numbers::pi * u(rng));
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed) {
    std::vector<ValidationCheck> checks;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    {
        double worst = 0.0;
        for (double r : {0.2, 0.5, 0.76, 1.0}) {
            const GaussianState g = two_mode_squeezed_state(r, 0.0);
            const oracle::FockVector psi = oracle::tms_fock_state(r, 0.0);
            for (int k = 0; k < 25; ++k) {
                const Complex a = std::polar(2.0 * u(rng), 2.0 * std::numbers::pi * u(rng));
                const Complex b = std::polar(2.0 * u(rng), 2.0 * std::numbers::pi * u(rng));
                const Complex ab[2] = {a, b};
                const double pg = coherent_projection_prob(g, displacement_vector(ab));
                worst = std::max(worst, std::abs(pg - oracle::coherent_projection_fock(psi, a, b)));
            }
        }
        checks.push_back(below("coherent projection: Gaussian vs Fock", worst, 1e-6));
    }

    {
        SystemParams p;
        p.omega_m = 1e6;
        p.kappa_lc = 1.0;
        const GeneratorPair gen = build_blue_generators(p, 1.0, 1.0);
        const GaussianState s0 = vacuum_state(2);
        const Matrix a = propagate(s0, gen, 0.5, 0.5).cov();
        const Matrix b = oracle::lyapunov_closed_form(gen.drift, gen.diffusion, s0.cov(), 0.5);
        checks.push_back(below("blue propagation vs vectorized closed form", (a - b).cwiseAbs().maxCoeff(), 1e-9));
    }

    {
        double worst = 0.0;
        double worst_ode = 0.0;
        for (double mt : {1.0, 5.0, 10.0, 20.0}) {
            const PulseSchedule s = optimal_shapes(1.0, mt);
            const double fid = transfer_fidelity(s);
            worst = std::max(worst, std::abs(fid - std::pow(1.0 - std::exp(-s.K_v), 2)));
            worst_ode = std::max(worst_ode, std::abs(std::norm(classical_transfer_sim(s, 1.0).xi) - fid));
        }
        checks.push_back(below("logistic schedule saturates (1 - e^-K)^2", worst, 1e-8));
        checks.push_back(below("classical transfer vs fidelity integral", worst_ode, 1e-8));
    }

    {
        const oracle::PovmCheck povm = oracle::qubit_pi_pulse_povm(40);
        checks.push_back({"pi-pulse POVM: M_e = |0><0|, M_g = 1 - |0><0|", 0.0, 0.0,
                          povm.M_e_is_vacuum_projector && povm.M_g_is_complement, {}});
        const int cutoff = 60;
        const Complex gamma(0.6, -0.3);
        const Eigen::VectorXcd coh = oracle::coherent_amplitudes(gamma, cutoff);
        const double err_coh = std::abs(oracle::excited_probability(coh * coh.adjoint(), gamma) - 1.0);
        const Complex alpha(0.4, 0.7);
        const double err_th = std::abs(oracle::excited_probability(oracle::thermal_density(1.0, cutoff), alpha) -
                                       coherent_projection_prob(thermal_state(1.0), displacement_vector({&alpha, 1})));
        checks.push_back(below("pi-pulse readout of a coherent state", err_coh, 1e-8));
        checks.push_back(below("pi-pulse readout of a thermal state", err_th, 1e-8));
    }

    {
        const BellResult r = optimize_settings(two_mode_squeezed_state(0.76, 0.0), 12);
        checks.push_back(below("two-mode squeezed benchmark |S - 2.45|", std::abs(r.S - 2.45), 0.01,
                               fmt::format("S = {:.6f}", r.S)));
    }

    {
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 1000; ++k) {
            const GaussianState s = random_two_mode_state(rng);
            Eigen::VectorXd v(8);
            for (int i = 0; i < 8; ++i) v(i) = 2.0 * u(rng) - 1.0;
            worst = std::max(worst, chsh_S(s, MeasurementSettings::from_vector(v)));
        }
        checks.push_back(below("Cirel'son bound over random states", worst, 2.0 * std::sqrt(2.0) + 1e-9));
    }

    {
        SystemParams p;
        p.omega_m = 1.0;
        p.kappa_lc = 0.125;
        p.lambda_t = 1.0;
        const double g = 0.02 * p.kappa_lc;
        const double gamma = p.scattering_rate(g);
        const AdiabaticComparison c = compare_full_to_adiabatic(p, g, gamma, 1.0 / gamma);
        checks.push_back(below("full vs adiabatic model at g/kappa_lc = 0.02", c.max_relative_error, 0.03));
    }
    return checks;
}

}  // namespace embell
