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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "embell/dynamics.hpp"
#include "embell/errors.hpp"
#include "embell/oracle/lyapunov_closed_form.hpp"
#include "test_support.hpp"

using namespace embell;
using embell::testing::max_abs_diff;

namespace {

SystemParams ideal_params() {
    SystemParams p;
    p.omega_m = 1e9;
    p.kappa_lc = 1.0;
    p.gamma_m = 0.0;
    p.nbar = 0.0;
    p.lambda_t = 1.0;
    p.g_max = 0.5;
    return p;
}

}  // namespace

TEST_CASE("Lindblad construction: damping, heating and free rotation") {
    const double kappa = 0.7;
    {
        LindbladModel m(1);
        m.add_jump(kappa, annihilator(1, 0));
        const GeneratorPair g = generators_from_lindblad(m);
        CHECK(max_abs_diff(g.drift, -0.5 * kappa * Matrix::Identity(2, 2)) < 1e-15);
        CHECK(max_abs_diff(g.diffusion, 0.5 * kappa * Matrix::Identity(2, 2)) < 1e-15);
    }
    {
        LindbladModel m(1);
        m.add_jump(kappa, creator(1, 0));
        const GeneratorPair g = generators_from_lindblad(m);
        CHECK(max_abs_diff(g.drift, 0.5 * kappa * Matrix::Identity(2, 2)) < 1e-15);
        CHECK(max_abs_diff(g.diffusion, 0.5 * kappa * Matrix::Identity(2, 2)) < 1e-15);
    }
    {
        // H = w a^dag a: dx/dt = w y, dy/dt = -w x
        const double w = 1.3;
        LindbladModel m(1);
        m.add_hamiltonian(0.5 * w, creator(1, 0), annihilator(1, 0));
        const GeneratorPair g = generators_from_lindblad(m);
        Matrix expected(2, 2);
        expected << 0, w, -w, 0;
        CHECK(max_abs_diff(g.drift, expected) < 1e-15);
        CHECK(g.diffusion.cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK_THROWS_AS(LindbladModel(1).add_jump(-1.0, annihilator(1, 0)), InvalidArgument);
}

TEST_CASE("thermal contact relaxes to the bath occupation") {
    const double gamma = 0.3, nbar = 4.0;
    LindbladModel m(1);
    m.add_jump(gamma * (nbar + 1.0), annihilator(1, 0));
    m.add_jump(gamma * nbar, creator(1, 0));
    const GeneratorPair g = generators_from_lindblad(m);
    const Matrix steady = oracle::lyapunov_steady_state(g.drift, g.diffusion);
    CHECK(max_abs_diff(steady, (nbar + 0.5) * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("blue generators in the ideal limit") {
    SystemParams p = ideal_params();
    const double gamma = 0.8;
    const GeneratorPair g = build_blue_generators(p, gamma, 0.0);
    CHECK(p.epsilon() < 1e-17);
    CHECK(max_abs_diff(g.drift.topLeftCorner(2, 2), 0.5 * gamma * Matrix::Identity(2, 2)) < 1e-15);
    CHECK(g.drift.bottomRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(is_valid_diffusion(g.diffusion));
}

TEST_CASE("blue generators without squeezing damp the mechanics") {
    SystemParams p = embell::testing::baseline_params();
    const GeneratorPair g = build_blue_generators(p, 0.0, 1.0);
    CHECK(max_abs_diff(g.drift.topLeftCorner(2, 2), -0.5 * p.gamma_m * Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs_diff(g.diffusion.topLeftCorner(2, 2),
                       0.5 * p.gamma_m * (2.0 * p.nbar + 1.0) * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("red generators: cascaded coupling and pure decay") {
    SystemParams p = embell::testing::baseline_params();
    p.gamma_m = 0.0;
    const double kappa = 2.5;
    Matrix f, n;
    red_generators_at(p, kappa, kappa, f, n);
    CHECK(f(2, 0) == doctest::Approx(-kappa).epsilon(1e-15));
    CHECK(f(3, 1) == doctest::Approx(-kappa).epsilon(1e-15));
    CHECK(n(0, 2) == doctest::Approx(0.5 * kappa).epsilon(1e-15));
    CHECK(is_valid_diffusion(n));

    red_generators_at(p, 0.0, kappa, f, n);
    CHECK(f(2, 0) == 0.0);
    CHECK(f(2, 2) == doctest::Approx(-0.5 * kappa));
    CHECK(f(0, 0) == 0.0);

    CHECK_THROWS_AS(build_red_generators(p, [](double t) { return 1.0 - t; }, [](double) { return 1.0; }, 2.0),
                    InvalidProfile);
}

TEST_CASE("diffusion matrices are symmetric and positive semidefinite") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        SystemParams p;
        p.omega_m = 1.0;
        p.kappa_lc = 0.02 + 0.5 * u(rng);
        p.gamma_m = 1e-3 * u(rng);
        p.nbar = 100.0 * u(rng);
        p.lambda_t = u(rng);
        const double a = 3.0 * u(rng), b = 3.0 * u(rng);
        CHECK(is_valid_diffusion(build_blue_generators(p, a, b).diffusion));
        Matrix f, n;
        red_generators_at(p, a, b, f, n);
        CHECK(is_valid_diffusion(n));
        CHECK(is_valid_diffusion(build_full_generators(p, p.omega_m, 0.05 * p.kappa_lc, b).diffusion));
    }
}

TEST_CASE("zero generators leave the state unchanged") {
    GeneratorPair g;
    g.drift = Matrix::Zero(4, 4);
    g.diffusion = Matrix::Zero(4, 4);
    const GaussianState s = two_mode_squeezed_state(0.6, 0.2);
    CHECK(max_abs_diff(propagate(s, g, 3.0, 0.5).cov(), s.cov()) < 1e-15);
}

TEST_CASE("vacuum stays vacuum under pure decay") {
    LindbladModel m(2);
    m.add_jump(1.3, annihilator(2, 0));
    m.add_jump(0.4, annihilator(2, 1));
    const GaussianState s = propagate(vacuum_state(2), generators_from_lindblad(m), 5.0, 0.1);
    CHECK(max_abs_diff(s.cov(), 0.5 * Matrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("blue propagation matches the vectorized closed form") {
    SystemParams p = embell::testing::baseline_params();
    const double gamma = p.gamma_max();
    for (double upsilon : {0.5, 1.0, 3.0}) {
        const GeneratorPair g = build_blue_generators(p, gamma, upsilon * gamma);
        const GaussianState init = tensor_product(thermal_state(0.1, "m"), vacuum_state(1, {"A"}));
        const double tau = 0.5 / gamma;
        const Matrix expected = oracle::lyapunov_closed_form(g.drift, g.diffusion, init.cov(), tau);
        const GaussianState got = propagate(init, g, tau, tau);
        CHECK(max_abs_diff(got.cov(), expected) < 1e-9 * expected.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("random stable generators match the closed form and steady state") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
        Matrix a(4, 4);
        for (int i = 0; i < 16; ++i) a(i) = nd(rng);
        Eigen::EigenSolver<Matrix> es(a, false);
        const double shift = es.eigenvalues().real().maxCoeff() + 0.5;
        GeneratorPair g;
        g.drift = a - shift * Matrix::Identity(4, 4);
        Matrix b(4, 4);
        for (int i = 0; i < 16; ++i) b(i) = nd(rng);
        g.diffusion = b * b.transpose();
        const GaussianState init = vacuum_state(2);
        const Matrix expected = oracle::lyapunov_closed_form(g.drift, g.diffusion, init.cov(), 1.7);
        CHECK(max_abs_diff(propagate(init, g, 1.7, 0.3).cov(), expected) < 1e-9 * expected.cwiseAbs().maxCoeff());

        const Matrix steady = oracle::lyapunov_steady_state(g.drift, g.diffusion);
        const Matrix late = propagate(init, g, 200.0, 1.0).cov();
        CHECK(max_abs_diff(late, steady) < 1e-8 * steady.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("time-dependent and constant paths agree for constant profiles") {
    SystemParams p = embell::testing::baseline_params();
    const double gamma = p.gamma_max();
    const GeneratorPair timed = build_red_generators(
        p, [gamma](double) { return gamma; }, [gamma](double) { return 0.7 * gamma; }, 5.0 / gamma);
    Matrix f, n;
    red_generators_at(p, gamma, 0.7 * gamma, f, n);
    GeneratorPair constant{f, n, {}, {}, {}};
    const GaussianState init = tensor_product(thermal_state(2.0, "m"), vacuum_state(1, {"B"}));
    const Matrix a = propagate(init, timed, 5.0 / gamma, 0.5 / gamma).cov();
    const Matrix b = propagate(init, constant, 5.0 / gamma, 0.5 / gamma).cov();
    CHECK(max_abs_diff(a, b) < 1e-9);
}

TEST_CASE("halving the step changes a logistic swap by less than 1e-8") {
    SystemParams p = embell::testing::baseline_params();
    const double gamma = p.gamma_max();
    const double t2 = 15.0 / gamma;
    const double M = 1.1 * gamma;
    auto gb = [M, t2](double t) { return M / (1.0 + std::exp(-M * (t - 0.5 * t2))); };
    auto kc = [M, t2](double t) { return M / (1.0 + std::exp(M * (t - 0.5 * t2))); };
    const GeneratorPair g = build_red_generators(p, gb, kc, t2);
    const GaussianState init = tensor_product(thermal_state(3.0, "m"), vacuum_state(1, {"B"}));
    const Matrix coarse = propagate(init, g, t2, t2 / 32.0).cov();
    const Matrix fine = propagate(init, g, t2, t2 / 64.0).cov();
    CHECK(max_abs_diff(coarse, fine) < 1e-8);

    const LinearMap map = propagator(g, t2, t2 / 16.0);
    const Matrix via_map = map.phi * init.cov() * map.phi.transpose() + map.q;
    CHECK(max_abs_diff(via_map, fine) < 1e-8);
}

TEST_CASE("propagated covariances stay symmetric and physical") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        SystemParams p = embell::testing::baseline_params();
        p.lambda_t = u(rng);
        p.nbar = 80.0 * u(rng);
        const double gamma = p.gamma_max();
        const GaussianState init = tensor_product(thermal_state(u(rng), "m"), vacuum_state(1, {"c"}));
        const GaussianState blue = propagate(init, build_blue_generators(p, gamma, 5.0 * u(rng) * gamma),
                                             4.0 * u(rng) / gamma, 1.0 / gamma);
        CHECK((blue.cov() - blue.cov().transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(blue.is_physical());
        Matrix f, n;
        red_generators_at(p, gamma, 3.0 * u(rng) * gamma, f, n);
        const GaussianState red = propagate(blue, GeneratorPair{f, n, {}, {}, {}}, 20.0 * u(rng) / gamma, 1.0 / gamma);
        CHECK(red.is_physical());
    }
}

TEST_CASE("frozen modes are untouched bit for bit") {
    SystemParams p = embell::testing::baseline_params();
    const double gamma = p.gamma_max();
    std::mt19937_64 rng(8);
    const GaussianState s = embell::testing::random_physical_state(3, rng);
    const GeneratorPair g = build_blue_generators(p, gamma, gamma);
    const LinearMap map = propagator(g, 0.7 / gamma, 1.0 / gamma);

    const GaussianState out = apply_map(s, map, {0, 2});
    CHECK(out.cov().block<2, 2>(2, 2) == s.cov().block<2, 2>(2, 2));

    const GeneratorPair big = embed_generators(g, {0, 2}, 3);
    CHECK(big.drift.block<2, 6>(2, 0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(big.diffusion.block<2, 6>(2, 0).cwiseAbs().maxCoeff() == 0.0);
    const GaussianState full = propagate(s, big, 0.7 / gamma, 1.0 / gamma);
    CHECK(max_abs_diff(full.cov(), out.cov()) < 1e-10 * out.cov().cwiseAbs().maxCoeff());

    CHECK_THROWS_AS(apply_map(s, map, {0}), InvalidArgument);
    CHECK_THROWS_AS(apply_map(s, map, {0, 3}), InvalidArgument);
}

TEST_CASE("free mechanical oscillation in the full model") {
    SystemParams p;
    p.omega_m = 2.0;
    p.kappa_lc = 0.25;
    p.lambda_t = 1.0;
    const GeneratorPair g = build_full_generators(p, p.omega_m, 0.0, 0.5);
    Matrix cov = 0.5 * Matrix::Identity(6, 6);
    cov(0, 0) = 2.0;
    cov(1, 1) = 0.125;
    const GaussianState init({"m", "lc", "c"}, Vector::Zero(6), cov);
    const double quarter = 0.5 * std::acos(-1.0) / p.omega_m;
    const GaussianState s = propagate(init, g, quarter, quarter / 8.0);
    CHECK(s.cov()(0, 0) == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(s.cov()(1, 1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("full model: cavities decay and lambda_t = 0 isolates the receiver") {
    SystemParams p;
    p.omega_m = 1.0;
    p.kappa_lc = 0.125;
    p.lambda_t = 1.0;
    {
        Matrix cov = 0.5 * Matrix::Identity(6, 6);
        cov.block<4, 4>(2, 2) *= 5.0;
        const GaussianState init({"m", "lc", "c"}, Vector::Zero(6), cov);
        const GaussianState s = propagate(init, build_full_generators(p, p.omega_m, 0.0, 0.3), 400.0, 1.0);
        CHECK(max_abs_diff(s.cov().block<4, 4>(2, 2), 0.5 * Matrix::Identity(4, 4)) < 1e-9);
    }
    {
        p.lambda_t = 0.0;
        const GaussianState init = tensor_product(thermal_state(1.0, "m"), vacuum_state(2, {"lc", "c"}));
        const GaussianState s = propagate(init, build_full_generators(p, p.omega_m, 0.01, 0.3), 50.0, 1.0);
        CHECK(max_abs_diff(s.cov().block<2, 2>(4, 4), 0.5 * Matrix::Identity(2, 2)) < 1e-14);
        CHECK(s.cov().block<4, 2>(0, 4).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("full model agrees with the adiabatic model for weak coupling") {
    SystemParams p;
    p.omega_m = 1.0;
    p.kappa_lc = 0.125;
    p.lambda_t = 1.0;
    const double expected_bound[] = {0.01, 0.03, 0.10};
    const double ratios[] = {0.01, 0.02, 0.05};
    for (int i = 0; i < 3; ++i) {
        const double g = ratios[i] * p.kappa_lc;
        const double gamma = p.scattering_rate(g);
        const AdiabaticComparison c = compare_full_to_adiabatic(p, g, gamma, 1.0 / gamma);
        CAPTURE(ratios[i]);
        CHECK(c.max_relative_error < expected_bound[i]);
    }
}

TEST_CASE("fast coupling modulation is flagged") {
    SystemParams p;
    p.omega_m = 1.0;
    p.kappa_lc = 0.125;
    p.lambda_t = 1.0;
    const GeneratorPair slow =
        build_full_generators(p, 1.0, [](double t) { return 1e-3 * (1.0 + 0.1 * std::sin(1e-3 * t)); }, 0.1, 100.0);
    CHECK(slow.warnings.empty());
    const GeneratorPair fast =
        build_full_generators(p, 1.0, [](double t) { return 1e-3 * (1.5 + std::sin(5.0 * t)); }, 0.1, 100.0);
    CHECK_FALSE(fast.warnings.empty());
}

TEST_CASE("invalid propagation requests") {
    const GeneratorPair g = build_blue_generators(embell::testing::baseline_params(), 1.0, 1.0);
    CHECK_THROWS_AS(propagate(vacuum_state(2), g, -1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(propagate(vacuum_state(3), g, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(propagator(g, std::numeric_limits<double>::quiet_NaN(), 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_blue_generators(embell::testing::baseline_params(), -1.0, 1.0), InvalidArgument);
}

TEST_CASE("runaway growth raises a divergence error with its time") {
    GeneratorPair g;
    g.drift = 400.0 * Matrix::Identity(2, 2);
    g.diffusion = Matrix::Identity(2, 2);
    try {
        propagate(vacuum_state(1), g, 10.0, 0.01);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError &e) {
        CHECK(e.time() > 0.0);
        CHECK(e.time() <= 10.0);
    }
}
