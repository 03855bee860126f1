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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace embell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Eigenvalue floor for the Sigma + (i/2) Omega >= 0 test.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Symplectic form for the quadrature ordering (x1, y1, ..., xn, yn), so that
/// [X_k, X_l] = i Omega_kl.
Matrix symplectic_form(std::size_t n_modes);

/**
 * Zero-mean (in this protocol) Gaussian state over labelled bosonic modes.
 *
 * Quadratures are x = (a + a^dag)/sqrt(2), y = -i (a - a^dag)/sqrt(2); the
 * vacuum covariance is I/2. The covariance is symmetrized on construction.
 */
class GaussianState {
   public:
    GaussianState(std::vector<std::string> labels, Vector mean, Matrix cov);

    std::size_t n_modes() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const Vector &mean() const { return mean_; }
    const Matrix &cov() const { return cov_; }

    /// Position of `label` in the mode ordering. Throws InvalidArgument if absent.
    std::size_t index_of(std::string_view label) const;

    /// Smallest eigenvalue of the Hermitian matrix Sigma + (i/2) Omega.
    double min_uncertainty_eigenvalue() const;
    bool is_physical(double tol = kPhysicalityTolerance) const {
        return min_uncertainty_eigenvalue() >= -tol;
    }

    /// Same labels and mean, new covariance (symmetrized).
    GaussianState with_cov(Matrix cov) const;

   private:
    std::vector<std::string> labels_;
    Vector mean_;
    Matrix cov_;
};

GaussianState vacuum_state(std::size_t n_modes, std::vector<std::string> labels = {});

/// Single-mode thermal state with mean occupation n0.
GaussianState thermal_state(double n0, std::string label = "m");

/**
 * Two-mode squeezed vacuum
 *   sech r sum_n (-e^{i phi} tanh r)^n |n>_A |n>_B.
 * Diagonal blocks cosh(2r)/2 I; off-diagonal block
 * -(sinh 2r / 2) [[cos phi, sin phi], [sin phi, -cos phi]].
 */
GaussianState two_mode_squeezed_state(double r, double phi, std::string label_a = "A",
                                      std::string label_b = "B");

/// Quadrature displacement vector d = sqrt(2) (Re a1, Im a1, Re a2, Im a2, ...).
Vector displacement_vector(std::span<const Complex> amplitudes);

/**
 * <alpha_1 ... alpha_n| rho |alpha_1 ... alpha_n> for displacement vector d
 * (see displacement_vector). A nonzero state mean is folded into d.
 *
 * Throws NumericalDegeneracy if Sigma + I/2 is not positive definite.
 */
double coherent_projection_prob(const GaussianState &state, const Vector &d);

/// Restrict to the modes in `keep` (in the order given).
GaussianState partial_trace(const GaussianState &state, std::span<const std::string> keep);
GaussianState partial_trace(const GaussianState &state, std::initializer_list<std::string> keep);

GaussianState tensor_product(const GaussianState &a, const GaussianState &b);

/// Apply the phase rotation a -> a e^{i theta} to one mode.
GaussianState rotate_mode(const GaussianState &state, std::string_view label, double theta);

/// 2n x 2n rotation acting as a -> a e^{i theta} on mode `mode` only.
Matrix mode_rotation(std::size_t n_modes, std::size_t mode, double theta);

}  // namespace embell
