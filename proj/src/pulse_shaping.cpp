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

#include "embell/pulse_shaping.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Core>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "embell/errors.hpp"
#include "embell/ode.hpp"

namespace embell {

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void require_positive(const char *name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(fmt::format("{} must be positive and finite, got {}", name, v));
    }
}

// Piecewise-constant profile on equal-width bins with cumulative integral.
struct Steps {
    double width;
    std::vector<double> levels;
    std::vector<double> cumulative;  // integral up to the start of each bin

    Steps(double tau2, std::vector<double> lv) : width(tau2 / lv.size()), levels(std::move(lv)) {
        double acc = 0.0;
        for (double l : levels) {
            cumulative.push_back(acc);
            acc += l * width;
        }
        cumulative.push_back(acc);
    }
    std::size_t bin(double t) const {
        auto k = static_cast<long>(std::floor(t / width));
        return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(levels.size()) - 1));
    }
    double value(double t) const { return levels[bin(t)]; }
    double integral(double t) const {
        const auto k = bin(t);
        return cumulative[k] + levels[k] * (t - k * width);
    }
};

}  // namespace

PulseSchedule optimal_shapes(double tau2, double M) {
    require_positive("tau2", tau2);
    require_positive("M", M);
    PulseSchedule s;
    s.tau2 = tau2;
    s.M = M;
    const double half = 0.5 * tau2;
    s.gamma_bs = [M, half](double t) { return M * logistic(M * (t - half)); };
    s.kappa_c = [M, half](double t) { return M * logistic(-M * (t - half)); };
    s.gamma_bs_integral = [M, half](double t) { return softplus(M * (t - half)) - softplus(-M * half); };
    s.kappa_c_integral = [M, half](double t) { return softplus(M * half) - softplus(-M * (t - half)); };
    s.K_v = 0.5 * M * tau2;
    s.K_w = 0.5 * M * tau2;
    return s;
}

double solve_M(double gamma_max, double tau2) {
    require_positive("gamma_max", gamma_max);
    require_positive("tau2", tau2);
    auto residual = [gamma_max, tau2](double M) { return M * logistic(0.5 * M * tau2) - gamma_max; };
    double lo = gamma_max;
    double hi = 2.0 * gamma_max;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    if (f_lo > 0.0 || f_hi < 0.0) {
        throw RootNotFound(fmt::format("solve_M: no sign change on [{}, {}] (residuals {}, {})", lo, hi, f_lo, f_hi));
    }
    if (f_lo == 0.0) return lo;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = residual(mid);
        if (f == 0.0) return mid;
        if (f < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PulseSchedule constant_schedule(double tau2, double gamma_bs, double kappa_c) {
    return piecewise_constant_schedule(tau2, {gamma_bs}, {kappa_c});
}

PulseSchedule piecewise_constant_schedule(double tau2, std::vector<double> gamma_levels,
                                          std::vector<double> kappa_levels) {
    require_positive("tau2", tau2);
    if (gamma_levels.empty() || kappa_levels.empty()) {
        throw InvalidArgument("piecewise_constant_schedule: need at least one level");
    }
    for (double v : gamma_levels) {
        if (!(v >= 0.0)) throw InvalidProfile("piecewise_constant_schedule: negative gamma level");
    }
    for (double v : kappa_levels) {
        if (!(v >= 0.0)) throw InvalidProfile("piecewise_constant_schedule: negative kappa level");
    }
    PulseSchedule s;
    s.tau2 = tau2;
    auto g = std::make_shared<Steps>(tau2, std::move(gamma_levels));
    auto k = std::make_shared<Steps>(tau2, std::move(kappa_levels));
    s.gamma_bs = [g](double t) { return g->value(t); };
    s.kappa_c = [k](double t) { return k->value(t); };
    s.gamma_bs_integral = [g](double t) { return g->integral(t); };
    s.kappa_c_integral = [k](double t) { return k->integral(t); };
    s.K_v = g->cumulative.back();
    s.K_w = k->cumulative.back();
    for (std::size_t i = 1; i < g->levels.size(); ++i) s.breakpoints.push_back(i * g->width);
    for (std::size_t i = 1; i < k->levels.size(); ++i) s.breakpoints.push_back(i * k->width);
    std::sort(s.breakpoints.begin(), s.breakpoints.end());
    s.breakpoints.erase(std::unique(s.breakpoints.begin(), s.breakpoints.end()), s.breakpoints.end());
    return s;
}

double transfer_fidelity(const PulseSchedule &schedule) {
    const double k_total = schedule.K_w;
    auto integrand = [&schedule, k_total](double t) {
        const double g = schedule.gamma_bs(t);
        const double k = schedule.kappa_c(t);
        if (g <= 0.0 || k <= 0.0) return 0.0;
        const double decay = 0.5 * (k_total - schedule.kappa_c_integral(t)) + 0.5 * schedule.gamma_bs_integral(t);
        return std::sqrt(g * k) * std::exp(-decay);
    };

    std::vector<double> edges{0.0};
    for (double b : schedule.breakpoints) {
        if (b > 0.0 && b < schedule.tau2) edges.push_back(b);
    }
    edges.push_back(schedule.tau2);

    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    double overlap = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double error = 0.0;
        double l1 = 0.0;
        const double part = Quadrature::integrate(integrand, edges[i], edges[i + 1], 30, 1e-12, &error, &l1);
        if (error > 1e-10 * std::max(l1, 1e-300) && error > 1e-14) {
            throw NumericalError(fmt::format(
                "transfer_fidelity: quadrature did not converge on [{}, {}] (error estimate {})",
                edges[i], edges[i + 1], error));
        }
        overlap += part;
    }
    return overlap * overlap;
}

ClassicalTransfer classical_transfer_sim(const PulseSchedule &schedule, std::complex<double> beta0,
                                         double until) {
    const double end = until < 0.0 ? schedule.tau2 : until;
    using State = Eigen::Vector2cd;
    const std::complex<double> i(0.0, 1.0);
    auto rhs = [&schedule, i](double t, const State &y) -> State {
        const double g = schedule.gamma_bs(t);
        const double k = schedule.kappa_c(t);
        State dy;
        dy(0) = -0.5 * g * y(0);
        dy(1) = -0.5 * k * y(1) - i * std::sqrt(g * k) * y(0);
        return dy;
    };
    Rk4Options opt;
    opt.rtol = 1e-11;
    opt.dt_max = schedule.tau2 / 64.0;
    opt.breakpoints = schedule.breakpoints;
    const State y = integrate_rk4(rhs, State(beta0, 0.0), 0.0, end, opt);
    return {y(0), y(1)};
}

void write_schedule_csv(std::ostream &out, const PulseSchedule &schedule, int samples) {
    out << "t,gamma_bs,kappa_c\n";
    const int n = std::max(samples, 2);
    for (int k = 0; k < n; ++k) {
        const double t = schedule.tau2 * k / (n - 1);
        out << fmt::format("{:.10g},{:.10g},{:.10g}\n", t, schedule.gamma_bs(t), schedule.kappa_c(t));
    }
}

}  // namespace embell
