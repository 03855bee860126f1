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

#include "embell/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "embell/dynamics.hpp"
#include "embell/errors.hpp"
#include "embell/nelder_mead.hpp"
#include "embell/pulse_shaping.hpp"

namespace embell {

namespace {

const std::vector<std::size_t> kMechA{0, 1};
const std::vector<std::size_t> kMechB{0, 2};

void require_positive(const char *name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(fmt::format("{} must be positive, got {}", name, v));
    }
}

struct Cell {
    double C, lambda, n0;
};

}  // namespace

void ProtocolConfig::validate() const {
    params.validate();
    require_positive("tau1", tau1);
    require_positive("tau2", tau2);
    require_positive("upsilon", upsilon);
    if (tau1 > kMaxSqueezeTime) {
        throw InvalidArgument(fmt::format("Gamma_sq tau1 must not exceed {}, got {}", kMaxSqueezeTime, tau1));
    }
}

ProtocolRun run_protocol(const ProtocolConfig &cfg) {
    cfg.validate();
    const SystemParams &p = cfg.params;
    const GaussianState initial =
        tensor_product(thermal_state(p.n0, "m"), vacuum_state(2, {"A", "B"}));

    const double gamma = p.gamma_max();
    if (gamma == 0.0) {
        return {initial, initial, partial_trace(initial, {"A", "B"}), 0.0, 0.0, 0.0};
    }

    const double t1 = cfg.tau1 / gamma;
    const double t2 = cfg.tau2 / gamma;
    try {
        const GeneratorPair blue = build_blue_generators(p, gamma, cfg.upsilon * gamma);
        const GaussianState entangled = apply_map(initial, propagator(blue, t1, t1), kMechA);

        const double M = solve_M(gamma, t2);
        const PulseSchedule schedule = optimal_shapes(t2, M);
        const GeneratorPair red = build_red_generators(p, schedule.gamma_bs, schedule.kappa_c, t2);
        const GaussianState swapped = apply_map(entangled, propagator(red, t2, t2 / 16.0), kMechB);

        const Matrix &cov = swapped.cov();
        const double scale = cov.diagonal().cwiseAbs().maxCoeff();
        const double residual = cov.block(0, 2, 2, 4).cwiseAbs().maxCoeff() / scale;
        return {entangled, swapped, partial_trace(swapped, {"A", "B"}), residual, gamma, M};
    } catch (const DivergenceError &e) {
        throw DivergenceError(e.time(), fmt::format("protocol run (tau1={}, tau2={}, upsilon={}, g_max={}): {}",
                                                    cfg.tau1, cfg.tau2, cfg.upsilon, p.g_max, e.what()));
    }
}

BellResult optimize_protocol(const ProtocolConfig &cfg, const ProtocolSearchOptions &opt) {
    cfg.validate();
    const ProtocolBounds box;
    const Eigen::Vector3d lo(box.tau1_lo, box.tau2_lo, box.upsilon_lo);
    const Eigen::Vector3d hi(box.tau1_hi, box.tau2_hi, box.upsilon_hi);
    auto to_physical = [&](const Eigen::VectorXd &u) -> Eigen::Vector3d {
        return lo + u.cwiseProduct(hi - lo);
    };

    std::optional<MeasurementSettings> warm;
    auto objective = [&](const Eigen::VectorXd &u) {
        const Eigen::Vector3d v = to_physical(u);
        ProtocolConfig c = cfg;
        c.tau1 = v(0);
        c.tau2 = v(1);
        c.upsilon = v(2);
        const ProtocolRun run = run_protocol(c);
        SettingsSearchOptions so;
        so.restarts = opt.inner_restarts;
        so.x_tol = 1e-6;
        so.warm_start = warm;
        const BellResult r = optimize_settings(run.ab, so);
        warm = r.settings;
        return -r.S;
    };

    // Restart points (tau1, tau2, upsilon) spread across the box.
    const std::vector<Eigen::Vector3d> starts{
        {0.5, 15.0, 2.0}, {1.0, 10.0, 1.0}, {0.3, 20.0, 5.0},
        {1.5, 8.0, 1.0},  {0.7, 25.0, 3.0}, {2.0, 12.0, 0.5},
    };

    NelderMeadOptions nm;
    nm.x_tol = opt.x_tol;
    nm.max_evals = opt.max_evals;
    nm.initial_step = 0.08;
    nm.lower = Eigen::VectorXd::Zero(3);
    nm.upper = Eigen::VectorXd::Ones(3);

    NelderMeadResult best;
    best.f = std::numeric_limits<double>::infinity();
    const int restarts = std::max(1, opt.restarts);
    for (int k = 0; k < restarts; ++k) {
        const Eigen::Vector3d s = starts[static_cast<std::size_t>(k) % starts.size()];
        const Eigen::VectorXd u0 = (s - lo).cwiseQuotient(hi - lo);
        NelderMeadResult r = nelder_mead(objective, u0, nm);
        if (r.f < best.f) best = std::move(r);
    }

    const Eigen::Vector3d v = to_physical(best.x);
    ProtocolConfig c = cfg;
    c.tau1 = v(0);
    c.tau2 = v(1);
    c.upsilon = v(2);
    const ProtocolRun run = run_protocol(c);
    SettingsSearchOptions so;
    so.restarts = opt.final_restarts;
    so.warm_start = warm;
    BellResult result = optimize_settings(run.ab, so);
    result.tau1 = c.tau1;
    result.tau2 = c.tau2;
    result.upsilon = c.upsilon;
    result.converged = result.converged && best.converged;
    return result;
}

SystemParams cell_params(const SystemParams &base, double cooperativity, double lambda_t, double n0) {
    SystemParams p = base;
    p.g_max = coupling_for_cooperativity(cooperativity, p.kappa_lc, p.gamma_m, p.nbar);
    p.lambda_t = lambda_t;
    p.n0 = n0;
    return p;
}

std::vector<SweepRow> sweep(const ProtocolConfig &cfg, int threads, const RowSink &sink,
                            const ProtocolSearchOptions &opt) {
    if (cfg.cooperativities.empty() || cfg.lambdas.empty() || cfg.n0s.empty()) {
        throw InvalidArgument("sweep: every axis needs at least one value");
    }
    std::vector<Cell> cells;
    for (double C : cfg.cooperativities) {
        for (double l : cfg.lambdas) {
            for (double n0 : cfg.n0s) cells.push_back({C, l, n0});
        }
    }

    std::vector<SweepRow> rows(cells.size());
    std::vector<char> done(cells.size(), 0);
    std::size_t emitted = 0;
    std::mutex mu;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            SweepRow row;
            row.cooperativity = cells[i].C;
            row.lambda_t = cells[i].lambda;
            row.n0 = cells[i].n0;
            try {
                ProtocolConfig c = cfg;
                c.params = cell_params(cfg.params, row.cooperativity, row.lambda_t, row.n0);
                row.result = optimize_protocol(c, opt);
                row.ok = true;
            } catch (const std::exception &e) {
                row.error = e.what();
            }
            std::lock_guard<std::mutex> lock(mu);
            rows[i] = std::move(row);
            done[i] = 1;
            while (emitted < cells.size() && done[emitted]) {
                if (sink) sink(rows[emitted]);
                ++emitted;
            }
        }
    };

    const int n = std::clamp(threads, 1, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    return rows;
}

}  // namespace embell
