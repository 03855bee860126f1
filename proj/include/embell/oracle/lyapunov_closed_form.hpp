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

#include <Eigen/Dense>

namespace embell::oracle {

/// Taylor series with scaling and squaring; independent of Eigen's Pade code.
Eigen::MatrixXd taylor_expm(const Eigen::MatrixXd &a);

/**
 * Sigma(tau) for constant F, N from the vectorized equation
 *   vec(Sigma)' = (F (x) I + I (x) F) vec(Sigma) + vec(N),
 * using one exponential of the affine-augmented (n^2 + 1) system.
 */
Eigen::MatrixXd lyapunov_closed_form(const Eigen::MatrixXd &F, const Eigen::MatrixXd &N,
                                     const Eigen::MatrixXd &sigma0, double tau);

/// Solution of F Sigma + Sigma F^T + N = 0 (F Hurwitz) via the Kronecker-sum system.
Eigen::MatrixXd lyapunov_steady_state(const Eigen::MatrixXd &F, const Eigen::MatrixXd &N);

}  // namespace embell::oracle
