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

#include "embell/gaussian_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell {

Matrix symplectic_form(std::size_t n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState::GaussianState(std::vector<std::string> labels, Vector mean, Matrix cov)
    : labels_(std::move(labels)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto dim = static_cast<Eigen::Index>(2 * labels_.size());
    if (labels_.empty()) {
        throw InvalidArgument("GaussianState needs at least one mode");
    }
    if (mean_.size() != dim || cov_.rows() != dim || cov_.cols() != dim) {
        throw InvalidArgument(fmt::format(
            "GaussianState dimension mismatch: {} modes, mean of size {}, covariance {}x{}",
            labels_.size(), mean_.size(), cov_.rows(), cov_.cols()));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw InvalidArgument(fmt::format("duplicate mode label '{}'", labels_[i]));
            }
        }
    }
    if (!cov_.allFinite() || !mean_.allFinite()) {
        throw InvalidArgument("GaussianState has non-finite entries");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

std::size_t GaussianState::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw InvalidArgument(fmt::format("unknown mode label '{}'", label));
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

double GaussianState::min_uncertainty_eigenvalue() const {
    const Eigen::MatrixXcd h =
        cov_.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(n_modes()).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

GaussianState GaussianState::with_cov(Matrix cov) const {
    return GaussianState(labels_, mean_, std::move(cov));
}

GaussianState vacuum_state(std::size_t n_modes, std::vector<std::string> labels) {
    if (n_modes == 0) {
        throw InvalidArgument("vacuum_state: n_modes must be >= 1");
    }
    if (labels.empty()) {
        for (std::size_t k = 0; k < n_modes; ++k) labels.push_back(std::to_string(k));
    }
    if (labels.size() != n_modes) {
        throw InvalidArgument("vacuum_state: label count does not match n_modes");
    }
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianState(std::move(labels), Vector::Zero(dim), 0.5 * Matrix::Identity(dim, dim));
}

GaussianState thermal_state(double n0, std::string label) {
    if (!(n0 >= 0.0) || !std::isfinite(n0)) {
        throw InvalidArgument(fmt::format("thermal_state: occupation must be >= 0, got {}", n0));
    }
    return GaussianState({std::move(label)}, Vector::Zero(2), (n0 + 0.5) * Matrix::Identity(2, 2));
}

GaussianState two_mode_squeezed_state(double r, double phi, std::string label_a,
                                      std::string label_b) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidArgument(fmt::format("two_mode_squeezed_state: r must be >= 0, got {}", r));
    }
    const double diag = 0.5 * std::cosh(2.0 * r);
    const double off = 0.5 * std::sinh(2.0 * r);
    Matrix cov = diag * Matrix::Identity(4, 4);
    Eigen::Matrix2d c;
    c << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    cov.block<2, 2>(0, 2) = -off * c;
    cov.block<2, 2>(2, 0) = -off * c.transpose();
    return GaussianState({std::move(label_a), std::move(label_b)}, Vector::Zero(4), std::move(cov));
}

Vector displacement_vector(std::span<const Complex> amplitudes) {
    Vector d(2 * amplitudes.size());
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        d(2 * k) = std::sqrt(2.0) * amplitudes[k].real();
        d(2 * k + 1) = std::sqrt(2.0) * amplitudes[k].imag();
    }
    return d;
}

double coherent_projection_prob(const GaussianState &state, const Vector &d) {
    if (d.size() != state.mean().size()) {
        throw InvalidArgument(fmt::format("coherent_projection_prob: displacement has size {}, state needs {}",
                                          d.size(), state.mean().size()));
    }
    const auto dim = state.cov().rows();
    const Matrix shifted = state.cov() + 0.5 * Matrix::Identity(dim, dim);
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw NumericalDegeneracy("coherent_projection_prob: Sigma + I/2 is not positive definite");
    }
    const Vector delta = d - state.mean();
    const double quad = delta.dot(llt.solve(delta));
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    return std::exp(-0.5 * quad - 0.5 * log_det);
}

GaussianState partial_trace(const GaussianState &state, std::span<const std::string> keep) {
    if (keep.empty()) {
        throw InvalidArgument("partial_trace: keep set must be nonempty");
    }
    std::vector<std::size_t> idx;
    for (const auto &label : keep) idx.push_back(state.index_of(label));
    const auto n = static_cast<Eigen::Index>(idx.size());
    Vector mean(2 * n);
    Matrix cov(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto si = static_cast<Eigen::Index>(2 * idx[i]);
        mean.segment<2>(2 * i) = state.mean().segment<2>(si);
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto sj = static_cast<Eigen::Index>(2 * idx[j]);
            cov.block<2, 2>(2 * i, 2 * j) = state.cov().block<2, 2>(si, sj);
        }
    }
    return GaussianState(std::vector<std::string>(keep.begin(), keep.end()), std::move(mean),
                         std::move(cov));
}

GaussianState partial_trace(const GaussianState &state, std::initializer_list<std::string> keep) {
    return partial_trace(state, std::span<const std::string>(keep.begin(), keep.size()));
}

GaussianState tensor_product(const GaussianState &a, const GaussianState &b) {
    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    const auto na = a.mean().size();
    const auto nb = b.mean().size();
    Vector mean(na + nb);
    mean << a.mean(), b.mean();
    Matrix cov = Matrix::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(std::move(labels), std::move(mean), std::move(cov));
}

Matrix mode_rotation(std::size_t n_modes, std::size_t mode, double theta) {
    Matrix rot = Matrix::Identity(2 * n_modes, 2 * n_modes);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto k = static_cast<Eigen::Index>(2 * mode);
    rot(k, k) = c;
    rot(k, k + 1) = -s;
    rot(k + 1, k) = s;
    rot(k + 1, k + 1) = c;
    return rot;
}

GaussianState rotate_mode(const GaussianState &state, std::string_view label, double theta) {
    const Matrix rot = mode_rotation(state.n_modes(), state.index_of(label), theta);
    return GaussianState(state.labels(), rot * state.mean(), rot * state.cov() * rot.transpose());
}

}  // namespace embell
