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

#include "embell/bell.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "embell/errors.hpp"
#include "embell/nelder_mead.hpp"

namespace embell {

namespace {

template <int D>
void factor(const Eigen::Matrix<double, D, D> &cov, Eigen::Matrix<double, D, D> &inv, double &norm) {
    const Eigen::Matrix<double, D, D> shifted = cov + 0.5 * Eigen::Matrix<double, D, D>::Identity();
    Eigen::LLT<Eigen::Matrix<double, D, D>> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NumericalDegeneracy("BellEvaluator: Sigma + I/2 is not positive definite");
    }
    inv = llt.solve(Eigen::Matrix<double, D, D>::Identity());
    double log_det = 0.0;
    for (int i = 0; i < D; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    norm = std::exp(-0.5 * log_det);
}

Eigen::Vector2d quad(Complex a) { return std::sqrt(2.0) * Eigen::Vector2d(a.real(), a.imag()); }

// splitmix64; fixed so seed points do not depend on the standard library.
struct SplitMix {
    std::uint64_t state;
    double uniform() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

}  // namespace

Eigen::Matrix<double, 8, 1> MeasurementSettings::to_vector() const {
    Eigen::Matrix<double, 8, 1> v;
    v << alpha1.real(), alpha1.imag(), alpha2.real(), alpha2.imag(), beta1.real(), beta1.imag(),
        beta2.real(), beta2.imag();
    return v;
}

MeasurementSettings MeasurementSettings::from_vector(const Eigen::VectorXd &v) {
    if (v.size() != 8) {
        throw InvalidArgument(fmt::format("MeasurementSettings: expected 8 parameters, got {}", v.size()));
    }
    return {{v(0), v(1)}, {v(2), v(3)}, {v(4), v(5)}, {v(6), v(7)}};
}

BellEvaluator::BellEvaluator(const GaussianState &two_mode) {
    if (two_mode.n_modes() != 2) {
        throw InvalidArgument(fmt::format("BellEvaluator: need a two-mode state, got {} modes", two_mode.n_modes()));
    }
    const Eigen::Matrix4d cov = two_mode.cov();
    mean_ = two_mode.mean();
    factor<4>(cov, joint_inv_, joint_norm_);
    factor<2>(cov.topLeftCorner<2, 2>(), a_inv_, a_norm_);
    factor<2>(cov.bottomRightCorner<2, 2>(), b_inv_, b_norm_);
}

double BellEvaluator::p_joint(Complex alpha, Complex beta) const {
    Eigen::Vector4d d;
    d << quad(alpha), quad(beta);
    d -= mean_;
    return joint_norm_ * std::exp(-0.5 * d.dot(joint_inv_ * d));
}

double BellEvaluator::p_a(Complex alpha) const {
    const Eigen::Vector2d d = quad(alpha) - mean_.head<2>();
    return a_norm_ * std::exp(-0.5 * d.dot(a_inv_ * d));
}

double BellEvaluator::p_b(Complex beta) const {
    const Eigen::Vector2d d = quad(beta) - mean_.tail<2>();
    return b_norm_ * std::exp(-0.5 * d.dot(b_inv_ * d));
}

double BellEvaluator::correlation(Complex alpha, Complex beta) const {
    return 4.0 * p_joint(alpha, beta) - 2.0 * (p_a(alpha) + p_b(beta)) + 1.0;
}

double BellEvaluator::chsh(const MeasurementSettings &s) const {
    return correlation(s.alpha1, s.beta1) + correlation(s.alpha1, s.beta2) +
           correlation(s.alpha2, s.beta1) - correlation(s.alpha2, s.beta2);
}

double correlation_E(const GaussianState &two_mode, Complex alpha, Complex beta) {
    return BellEvaluator(two_mode).correlation(alpha, beta);
}

double chsh_S(const GaussianState &two_mode, const MeasurementSettings &s) {
    return BellEvaluator(two_mode).chsh(s);
}

std::vector<MeasurementSettings> settings_seeds(int count) {
    using V = Eigen::Matrix<double, 8, 1>;
    std::vector<V> fixed;
    fixed.push_back(V::Zero());
    fixed.push_back((V() << -0.15, 0, 0.5, 0, -0.15, 0, 0.5, 0).finished());
    fixed.push_back((V() << 0.15, 0, -0.5, 0, 0.15, 0, -0.5, 0).finished());
    fixed.push_back((V() << 0, -0.16, 0, 0.52, 0, 0.16, 0, -0.52).finished());
    fixed.push_back((V() << 0, 0.16, 0, -0.52, 0, -0.16, 0, 0.52).finished());
    fixed.push_back((V() << -0.15, 0, 0.5, 0, 0.15, 0, -0.5, 0).finished());
    fixed.push_back((V() << -0.1, -0.1, 0.4, 0.4, -0.1, 0.1, 0.4, -0.4).finished());
    fixed.push_back((V() << 0.05, 0, 0.3, 0, 0.05, 0, 0.3, 0).finished());

    std::vector<MeasurementSettings> seeds;
    SplitMix rng{0x5EEDull};
    for (int k = 0; k < count; ++k) {
        if (k < static_cast<int>(fixed.size())) {
            seeds.push_back(MeasurementSettings::from_vector(fixed[k]));
            continue;
        }
        Eigen::VectorXd v(8);
        for (int i = 0; i < 8; ++i) v(i) = 1.4 * rng.uniform() - 0.7;
        seeds.push_back(MeasurementSettings::from_vector(v));
    }
    return seeds;
}

BellResult evaluate_settings(const GaussianState &two_mode, const MeasurementSettings &s) {
    const BellEvaluator ev(two_mode);
    BellResult r;
    r.settings = s;
    const Complex a[2] = {s.alpha1, s.alpha2};
    const Complex b[2] = {s.beta1, s.beta2};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) r.E[i][j] = ev.correlation(a[i], b[j]);
    }
    r.S = r.E[0][0] + r.E[0][1] + r.E[1][0] - r.E[1][1];
    r.converged = true;
    return r;
}

BellResult optimize_settings(const GaussianState &two_mode, const SettingsSearchOptions &opt) {
    if (opt.restarts < 1 && !opt.warm_start) {
        throw InvalidArgument("optimize_settings: need at least one restart");
    }
    const BellEvaluator ev(two_mode);
    auto objective = [&ev](const Eigen::VectorXd &x) { return -ev.chsh(MeasurementSettings::from_vector(x)); };

    NelderMeadOptions nm;
    nm.x_tol = opt.x_tol;
    nm.max_evals = opt.max_evals;
    nm.initial_step = 0.1;
    nm.lower = Eigen::VectorXd::Constant(8, -kSettingsBox);
    nm.upper = Eigen::VectorXd::Constant(8, kSettingsBox);

    std::vector<MeasurementSettings> starts;
    if (opt.warm_start) starts.push_back(*opt.warm_start);
    for (const auto &s : settings_seeds(opt.restarts)) starts.push_back(s);

    NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    for (const auto &s : starts) {
        const Eigen::VectorXd x0 = s.to_vector();
        NelderMeadResult r = nelder_mead(objective, x0, nm);
        if (r.f < best.f) best = std::move(r);
    }
    BellResult result = evaluate_settings(two_mode, MeasurementSettings::from_vector(best.x));
    result.converged = best.converged;
    return result;
}

BellResult optimize_settings(const GaussianState &two_mode, int restarts) {
    SettingsSearchOptions opt;
    opt.restarts = restarts;
    return optimize_settings(two_mode, opt);
}

}  // namespace embell
