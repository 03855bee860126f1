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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell {

struct Rk4Options {
    double dt_max = 0.0;  ///< <= 0 means "no bound beyond the interval"
    double rtol = 1e-10;
    std::size_t max_steps = 50'000'000;
    /// Interior points where the right-hand side may jump; steps never straddle them.
    std::span<const double> breakpoints = {};
};

namespace detail {

template <typename State, typename Rhs>
State rk4_step(const Rhs &rhs, const State &y, double t, double h) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, (y + (0.5 * h) * k1).eval());
    const State k3 = rhs(t + 0.5 * h, (y + (0.5 * h) * k2).eval());
    const State k4 = rhs(t + h, (y + h * k3).eval());
    return (y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
}

}  // namespace detail

/**
 * Classical RK4 with step-doubling (Richardson) error control.
 *
 * Each accepted step compares one step of size h against two of size h/2 and
 * keeps the extrapolated value y_half + (y_half - y_full)/15. The local error
 * estimate |y_half - y_full|/15 must stay below rtol * max(|y|_inf, tiny).
 * `post` is applied to every accepted state (e.g. symmetrization).
 *
 * State is any Eigen dense type.
 */
template <typename State, typename Rhs, typename Post>
State integrate_rk4(const Rhs &rhs, State y, double t0, double t1, const Rk4Options &opt,
                    const Post &post) {
    if (!(t1 >= t0)) {
        throw InvalidArgument(fmt::format("integrate_rk4: end time {} before start {}", t1, t0));
    }
    std::vector<double> stops;
    for (double b : opt.breakpoints) {
        if (b > t0 && b < t1) stops.push_back(b);
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(t1);

    const double span = t1 - t0;
    const double cap = opt.dt_max > 0.0 ? opt.dt_max : span;
    double h = std::min(cap, span / 16.0);
    double t = t0;
    std::size_t steps = 0;

    for (double stop : stops) {
        while (t < stop) {
            if (++steps > opt.max_steps) {
                throw NumericalError(
                    fmt::format("integrate_rk4: exceeded {} steps at t={}", opt.max_steps, t));
            }
            const bool last = t + h >= stop * (1.0 - 1e-14) || h <= 0.0;
            const double step = last ? stop - t : h;
            const State full = detail::rk4_step(rhs, y, t, step);
            const State mid = detail::rk4_step(rhs, y, t, 0.5 * step);
            const State half = detail::rk4_step(rhs, mid, t + 0.5 * step, 0.5 * step);
            if (!half.allFinite() || !full.allFinite()) {
                throw DivergenceError(t, fmt::format("integration diverged at t={}", t));
            }
            const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
            const double scale = std::max(half.cwiseAbs().maxCoeff(), 1e-300);
            const double ratio = err / (opt.rtol * scale);
            if (ratio <= 1.0) {
                y = (half + (half - full) / 15.0).eval();
                post(y);
                t = last ? stop : t + step;
            }
            const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 4.0;
            h = std::min(cap, step * std::clamp(grow, 0.2, 4.0));
            if (h < 1e-15 * std::max(std::abs(t), span)) {
                throw NumericalError(fmt::format("integrate_rk4: step size underflow at t={}", t));
            }
        }
    }
    return y;
}

template <typename State, typename Rhs>
State integrate_rk4(const Rhs &rhs, State y, double t0, double t1, const Rk4Options &opt) {
    return integrate_rk4(rhs, std::move(y), t0, t1, opt, [](State &) {});
}

}  // namespace embell
