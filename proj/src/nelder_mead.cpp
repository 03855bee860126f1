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

#include "embell/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                             const Eigen::VectorXd &x0, const NelderMeadOptions &opt) {
    const Eigen::Index n = x0.size();
    if (n == 0) throw InvalidArgument("nelder_mead: empty start vector");
    const bool boxed = opt.lower.size() == n && opt.upper.size() == n;
    if ((opt.lower.size() != 0 || opt.upper.size() != 0) && !boxed) {
        throw InvalidArgument(fmt::format("nelder_mead: box bounds must have dimension {}", n));
    }

    auto clamp = [&](Eigen::VectorXd x) {
        if (boxed) x = x.cwiseMax(opt.lower).cwiseMin(opt.upper);
        return x;
    };

    NelderMeadResult result;
    auto eval = [&](const Eigen::VectorXd &x) {
        ++result.evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    // Adaptive coefficients scale with dimension.
    const double dim = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / dim;
    const double gamma = 0.75 - 1.0 / (2.0 * dim);
    const double delta = 1.0 - 1.0 / dim;

    std::vector<Eigen::VectorXd> simplex;
    std::vector<double> values;
    simplex.push_back(clamp(x0));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd x = simplex.front();
        double step = opt.initial_step;
        if (boxed && x(i) + step > opt.upper(i)) step = -step;
        x(i) += step;
        simplex.push_back(clamp(x));
    }
    for (const auto &x : simplex) values.push_back(eval(x));

    std::vector<std::size_t> order(simplex.size());
    for (;;) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<Eigen::VectorXd> s2;
            std::vector<double> v2;
            for (auto k : order) {
                s2.push_back(simplex[k]);
                v2.push_back(values[k]);
            }
            simplex.swap(s2);
            values.swap(v2);
        }

        double diameter = 0.0;
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            diameter = std::max(diameter, (simplex[k] - simplex[0]).lpNorm<Eigen::Infinity>());
        }
        const double spread = values.back() - values.front();
        if (diameter < opt.x_tol && (opt.f_tol <= 0.0 || spread <= opt.f_tol)) {
            result.converged = true;
            break;
        }
        if (result.evals >= opt.max_evals) break;

        const std::size_t worst = simplex.size() - 1;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < worst; ++k) centroid += simplex[k];
        centroid /= dim;

        const Eigen::VectorXd xr = clamp(centroid + alpha * (centroid - simplex[worst]));
        const double fr = eval(xr);
        if (fr < values[0]) {
            const Eigen::VectorXd xe = clamp(centroid + beta * (xr - centroid));
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[worst - 1]) {
            simplex[worst] = xr;
            values[worst] = fr;
            continue;
        }
        if (fr < values[worst]) {
            const Eigen::VectorXd xc = clamp(centroid + gamma * (xr - centroid));
            const double fc = eval(xc);
            if (fc <= fr) {
                simplex[worst] = xc;
                values[worst] = fc;
                continue;
            }
        } else {
            const Eigen::VectorXd xc = clamp(centroid - gamma * (centroid - simplex[worst]));
            const double fc = eval(xc);
            if (fc < values[worst]) {
                simplex[worst] = xc;
                values[worst] = fc;
                continue;
            }
        }
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            simplex[k] = clamp(simplex[0] + delta * (simplex[k] - simplex[0]));
            values[k] = eval(simplex[k]);
        }
    }

    result.x = simplex.front();
    result.f = values.front();
    return result;
}

}  // namespace embell
