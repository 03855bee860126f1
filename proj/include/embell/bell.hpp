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

#include <array>
#include <optional>

#include "embell/gaussian_state.hpp"

namespace embell {

/// Largest magnitude of a real or imaginary part of any setting.
inline constexpr double kSettingsBox = 10.0 / 1.4142135623730951;

struct MeasurementSettings {
    Complex alpha1{}, alpha2{}, beta1{}, beta2{};

    /// (Re a1, Im a1, Re a2, Im a2, Re b1, Im b1, Re b2, Im b2)
    Eigen::Matrix<double, 8, 1> to_vector() const;
    static MeasurementSettings from_vector(const Eigen::VectorXd &v);

    bool operator==(const MeasurementSettings &) const = default;
};

struct BellResult {
    double S = 0.0;
    std::array<std::array<double, 2>, 2> E{};  ///< E[i][j] = E(alpha_{i+1}, beta_{j+1})
    MeasurementSettings settings;
    double tau1 = 0.0;  ///< units of 1/Gamma_max (protocol runs only)
    double tau2 = 0.0;
    double upsilon = 0.0;
    bool converged = false;
};

/**
 * Repeated evaluation of E and S on one two-mode state. Factorizes
 * Sigma + I/2 for the joint state and both marginals once.
 */
class BellEvaluator {
   public:
    explicit BellEvaluator(const GaussianState &two_mode);

    double p_joint(Complex alpha, Complex beta) const;
    double p_a(Complex alpha) const;
    double p_b(Complex beta) const;

    /// E = 4 p_joint - 2 (p_A + p_B) + 1
    double correlation(Complex alpha, Complex beta) const;
    /// S = E11 + E12 + E21 - E22
    double chsh(const MeasurementSettings &s) const;

   private:
    Eigen::Matrix4d joint_inv_;
    Eigen::Matrix2d a_inv_, b_inv_;
    Eigen::Vector4d mean_;
    double joint_norm_ = 1.0, a_norm_ = 1.0, b_norm_ = 1.0;
};

double correlation_E(const GaussianState &two_mode, Complex alpha, Complex beta);
double chsh_S(const GaussianState &two_mode, const MeasurementSettings &s);

struct SettingsSearchOptions {
    int restarts = 12;
    double x_tol = 1e-7;
    std::size_t max_evals = 40000;  ///< per restart
    /// Tried first when present (e.g. the optimum of a neighbouring state).
    std::optional<MeasurementSettings> warm_start;
};

/// Deterministic seed points: all-zero, small real and imaginary patterns,
/// then a fixed pseudo-random sequence.
std::vector<MeasurementSettings> settings_seeds(int count);

/// Maximizes S over the settings by multi-start simplex search.
BellResult optimize_settings(const GaussianState &two_mode, const SettingsSearchOptions &opt = {});
BellResult optimize_settings(const GaussianState &two_mode, int restarts);

/// Fills E and S for given settings.
BellResult evaluate_settings(const GaussianState &two_mode, const MeasurementSettings &s);

}  // namespace embell
