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

#include "embell/oracle/lyapunov_closed_form.hpp"

#include <cmath>

#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell::oracle {

namespace {

Eigen::MatrixXd kronecker_sum(const Eigen::MatrixXd &F) {
    const auto n = F.rows();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n * n, n * n);
    // Column-major vec: vec(F S) = (I (x) F) vec(S), vec(S F^T) = (F (x) I) vec(S).
    for (Eigen::Index i = 0; i < n; ++i) {
        k.block(i * n, i * n, n, n) += F;
        for (Eigen::Index j = 0; j < n; ++j) {
            k.block(i * n, j * n, n, n).diagonal().array() += F(i, j);
        }
    }
    return k;
}

void check_square(const Eigen::MatrixXd &F, const Eigen::MatrixXd &N) {
    if (F.rows() != F.cols() || N.rows() != F.rows() || N.cols() != F.cols()) {
        throw InvalidArgument(fmt::format("lyapunov oracle: F is {}x{}, N is {}x{}", F.rows(), F.cols(),
                                          N.rows(), N.cols()));
    }
}

}  // namespace

Eigen::MatrixXd taylor_expm(const Eigen::MatrixXd &a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

    const auto n = a.rows();
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k < 60; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20 * result.cwiseAbs().maxCoeff()) break;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();
    return result;
}

Eigen::MatrixXd lyapunov_closed_form(const Eigen::MatrixXd &F, const Eigen::MatrixXd &N,
                                     const Eigen::MatrixXd &sigma0, double tau) {
    check_square(F, N);
    const auto n = F.rows();
    const auto nn = n * n;
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(nn + 1, nn + 1);
    aug.topLeftCorner(nn, nn) = kronecker_sum(F);
    aug.topRightCorner(nn, 1) = Eigen::Map<const Eigen::VectorXd>(N.data(), nn);

    Eigen::VectorXd z(nn + 1);
    z.head(nn) = Eigen::Map<const Eigen::VectorXd>(sigma0.data(), nn);
    z(nn) = 1.0;
    const Eigen::VectorXd out = taylor_expm(aug * tau) * z;
    Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(out.data(), n, n);
    return 0.5 * (sigma + sigma.transpose());
}

Eigen::MatrixXd lyapunov_steady_state(const Eigen::MatrixXd &F, const Eigen::MatrixXd &N) {
    check_square(F, N);
    const auto n = F.rows();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kronecker_sum(F));
    if (!lu.isInvertible()) {
        throw NumericalDegeneracy("lyapunov_steady_state: Kronecker sum is singular");
    }
    const Eigen::VectorXd v = lu.solve(-Eigen::Map<const Eigen::VectorXd>(N.data(), n * n));
    Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
    return 0.5 * (sigma + sigma.transpose());
}

}  // namespace embell::oracle
