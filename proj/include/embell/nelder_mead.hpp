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

#include <cstddef>
#include <functional>

#include <Eigen/Core>

namespace embell {

struct NelderMeadOptions {
    double x_tol = 1e-7;          ///< stop when the simplex diameter falls below this
    double f_tol = 0.0;           ///< and (if > 0) the spread of values below this
    std::size_t max_evals = 20000;
    double initial_step = 0.1;    ///< per-coordinate offset of the initial simplex
    Eigen::VectorXd lower;        ///< optional box; empty means unbounded
    Eigen::VectorXd upper;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

/// Minimizes f with the adaptive-coefficient simplex method. Trial points are
/// clamped to the box when one is given. Deterministic for a given start.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                             const Eigen::VectorXd &x0, const NelderMeadOptions &opt);

}  // namespace embell
