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
#include <random>
#include <vector>

#include "embell/bell.hpp"
#include "embell/errors.hpp"
#include "embell/nelder_mead.hpp"
#include "embell/oracle/fock.hpp"
#include "test_support.hpp"

using namespace embell;

namespace {

MeasurementSettings random_settings(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd v(8);
    for (int i = 0; i < 8; ++i) v(i) = u(rng);
    return MeasurementSettings::from_vector(v);
}

/// E from truncated Fock amplitudes of the two-mode squeezed vacuum.
double fock_correlation(double r, double phi, Complex alpha, Complex beta) {
    const oracle::FockVector psi = oracle::tms_fock_state(r, phi);
    const Eigen::VectorXcd ca = oracle::coherent_amplitudes(alpha, psi.cutoff);
    const Eigen::VectorXcd cb = oracle::coherent_amplitudes(beta, psi.cutoff);
    double pa = 0.0, pb = 0.0;
    for (int n = 0; n < psi.cutoff; ++n) {
        const double w = std::norm(psi.at(n, n));
        pa += w * std::norm(ca(n));
        pb += w * std::norm(cb(n));
    }
    const double pab = oracle::coherent_projection_fock(psi, alpha, beta);
    return 4.0 * pab - 2.0 * (pa + pb) + 1.0;
}

}  // namespace

TEST_CASE("vacuum reference values") {
    const GaussianState vac = vacuum_state(2, {"A", "B"});
    CHECK(correlation_E(vac, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(chsh_S(vac, MeasurementSettings{}) == doctest::Approx(2.0).epsilon(1e-15));
    // Unit-amplitude probes on vacuum: E = 4e^{-2} - 4e^{-1} + 1
    CHECK(correlation_E(vac, 1.0, 1.0) == doctest::Approx(4.0 * std::exp(-2.0) - 4.0 * std::exp(-1.0) + 1.0));
}

TEST_CASE("zero settings on a two-mode squeezed state give E = 1") {
    for (double r : {0.1, 0.76, 1.3}) {
        CHECK(correlation_E(two_mode_squeezed_state(r, 0.4), 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("correlations match the Fock-space oracle") {
    std::mt19937_64 rng(2);
    for (double r : {0.3, 0.76}) {
        const GaussianState s = two_mode_squeezed_state(r, 0.0);
        for (int k = 0; k < 20; ++k) {
            std::uniform_real_distribution<double> u(-1.2, 1.2);
            const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
            CHECK(std::abs(correlation_E(s, a, b) - fock_correlation(r, 0.0, a, b)) < 1e-8);
        }
    }
}

TEST_CASE("correlations are bounded by one") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 500; ++k) {
        const GaussianState s = embell::testing::random_physical_state(2, rng);
        const BellEvaluator ev(s);
        const MeasurementSettings m = random_settings(rng, 2.0);
        const double e = ev.correlation(m.alpha1, m.beta2);
        CHECK(e >= -1.0 - 1e-12);
        CHECK(e <= 1.0 + 1e-12);
    }
}

TEST_CASE("two-mode squeezed benchmark") {
    const BellResult r = optimize_settings(two_mode_squeezed_state(0.76, 0.0), 12);
    CHECK(r.S == doctest::Approx(2.45).epsilon(0.01 / 2.45));
    CHECK(r.converged);
    CHECK(chsh_S(two_mode_squeezed_state(0.76, 0.0), r.settings) == doctest::Approx(r.S).epsilon(1e-14));
}

TEST_CASE("squeezing sweep is single-peaked") {
    std::vector<double> s;
    for (int i = 0; i <= 20; ++i) s.push_back(optimize_settings(two_mode_squeezed_state(0.3 + 0.05 * i, 0.0), 8).S);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] > s[peak]) peak = i;
    }
    for (std::size_t i = 1; i <= peak; ++i) CHECK(s[i] >= s[i - 1] - 1e-9);
    for (std::size_t i = peak + 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1] + 1e-9);
    CHECK(std::abs(0.3 + 0.05 * static_cast<double>(peak) - 0.76) <= 0.05);
}

TEST_CASE("separable states do not violate") {
    std::mt19937_64 rng(6);
    const GaussianState product = tensor_product(thermal_state(0.3, "A"), vacuum_state(1, {"B"}));
    for (int k = 0; k < 1000; ++k) CHECK(chsh_S(product, random_settings(rng, 2.0)) <= 2.0 + 1e-9);
    const BellResult vac = optimize_settings(vacuum_state(2, {"A", "B"}), 12);
    CHECK(vac.S == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("random states respect the Cirel'son bound") {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 2000; ++k) {
        const GaussianState s = embell::testing::random_physical_state(2, rng);
        CHECK(chsh_S(s, random_settings(rng, 1.0)) <= 2.0 * std::sqrt(2.0) + 1e-9);
    }
}

TEST_CASE("local phase rotations are absorbed by the settings") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        const GaussianState s = embell::testing::random_physical_state(2, rng);
        const MeasurementSettings m = random_settings(rng, 1.0);
        const double ta = 0.3 * k, tb = -0.17 * k;
        const GaussianState rotated = rotate_mode(rotate_mode(s, "A", ta), "B", tb);
        MeasurementSettings mr = m;
        mr.alpha1 *= std::polar(1.0, ta);
        mr.alpha2 *= std::polar(1.0, ta);
        mr.beta1 *= std::polar(1.0, tb);
        mr.beta2 *= std::polar(1.0, tb);
        CHECK(std::abs(chsh_S(rotated, mr) - chsh_S(s, m)) < 1e-10);
    }
}

TEST_CASE("exchanging A and B with their settings leaves S unchanged") {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 50; ++k) {
        const GaussianState s = embell::testing::random_physical_state(2, rng);
        const GaussianState swapped = partial_trace(s, {"B", "A"});
        const MeasurementSettings m = random_settings(rng, 1.0);
        const MeasurementSettings ms{m.beta1, m.beta2, m.alpha1, m.alpha2};
        CHECK(std::abs(chsh_S(swapped, ms) - chsh_S(s, m)) < 1e-12);
    }
    const GaussianState tms = two_mode_squeezed_state(0.6, 0.0);
    CHECK(optimize_settings(partial_trace(tms, {"B", "A"}), 8).S ==
          doctest::Approx(optimize_settings(tms, 8).S).epsilon(1e-9));
}

TEST_CASE("settings search is deterministic") {
    const GaussianState s = two_mode_squeezed_state(0.9, 0.3);
    const BellResult a = optimize_settings(s, 6);
    const BellResult b = optimize_settings(s, 6);
    CHECK(a.S == b.S);
    CHECK(a.settings == b.settings);
    CHECK(settings_seeds(20).size() == 20);
}

TEST_CASE("settings stay inside the search box") {
    const BellResult r = optimize_settings(two_mode_squeezed_state(1.3, 0.0), 12);
    CHECK(r.settings.to_vector().cwiseAbs().maxCoeff() <= kSettingsBox);
}

TEST_CASE("invalid evaluator input") {
    CHECK_THROWS_AS(BellEvaluator(vacuum_state(3)), InvalidArgument);
    const GaussianState bad({"A", "B"}, Vector::Zero(4), -0.5 * Matrix::Identity(4, 4));
    CHECK_THROWS_AS(BellEvaluator{bad}, NumericalDegeneracy);
    CHECK_THROWS_AS(MeasurementSettings::from_vector(Eigen::VectorXd::Zero(5)), InvalidArgument);
}

TEST_CASE("Nelder-Mead finds the minimum of a shifted quadratic inside a box") {
    NelderMeadOptions opt;
    opt.lower = Eigen::VectorXd::Constant(3, -1.0);
    opt.upper = Eigen::VectorXd::Constant(3, 1.0);
    Eigen::VectorXd target(3);
    target << 0.3, -0.4, 2.0;
    const auto r = nelder_mead([&](const Eigen::VectorXd &x) { return (x - target).squaredNorm(); },
                               Eigen::VectorXd::Zero(3), opt);
    CHECK(r.converged);
    CHECK(r.x(0) == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(r.x(1) == doctest::Approx(-0.4).epsilon(1e-5));
    CHECK(r.x(2) == doctest::Approx(1.0).epsilon(1e-12));
}
