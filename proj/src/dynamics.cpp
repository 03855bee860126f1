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

#include "embell/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "embell/errors.hpp"
#include "embell/ode.hpp"

namespace embell {

namespace {

constexpr int kProfileSamples = 257;

void require_rate(const char *name, double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(fmt::format("{} must be a finite nonnegative rate, got {}", name, value));
    }
}

void symmetrize(Matrix &m) { m = 0.5 * (m + m.transpose()).eval(); }

// Mode indices of the three-mode model.
constexpr std::size_t kMech = 0;
constexpr std::size_t kLc = 1;
constexpr std::size_t kCavity = 2;

LindbladModel full_model(const SystemParams &p, double detuning, double g, double kappa_c) {
    LindbladModel model(3);
    const auto m = annihilator(3, kMech);
    const auto l = annihilator(3, kLc);
    const auto c = annihilator(3, kCavity);
    const auto md = creator(3, kMech);
    const auto ld = creator(3, kLc);
    const auto cd = creator(3, kCavity);

    // coef * op + h.c. doubles number operators, hence the halves.
    model.add_hamiltonian(0.5 * p.omega_m, md, m);
    model.add_hamiltonian(-0.5 * detuning, ld, l);
    model.add_hamiltonian(-0.5 * detuning, cd, c);
    model.add_hamiltonian(g, l, m);
    model.add_hamiltonian(g, l, md);

    // Cascaded coupling: D[sqrt(lambda kappa_lc) l + sqrt(kappa_c) c] plus the
    // Hamiltonian (i/2) sqrt(lambda kappa_lc kappa_c) (l^dag c - c^dag l).
    const double lambda = p.lambda_t;
    const double cascade = std::sqrt(lambda * p.kappa_lc * kappa_c);
    model.add_hamiltonian(Complex(0.0, 0.5 * cascade), ld, c);
    model.add_jump(1.0, std::sqrt(lambda * p.kappa_lc) * l + std::sqrt(kappa_c) * c);
    model.add_jump((1.0 - lambda) * p.kappa_lc, l);

    model.add_jump(p.gamma_m * (p.nbar + 1.0), m);
    model.add_jump(p.gamma_m * p.nbar, md);
    return model;
}

// Chunk so that |F| h stays O(1): the -F block of the exponential otherwise
// overflows for strongly damped modes.
struct ChunkMap {
    LinearMap map;
    long steps;
    double h;
};

ChunkMap constant_chunk(const GeneratorPair &gen, double duration, double dt_max) {
    const Eigen::Index dim = gen.dim();
    const double norm = gen.drift.cwiseAbs().rowwise().sum().maxCoeff();
    double h = duration;
    if (dt_max > 0.0) h = std::min(h, dt_max);
    if (norm > 0.0) h = std::min(h, 1.0 / norm);
    const auto steps = std::max(1L, static_cast<long>(std::ceil(duration / h - 1e-12)));
    h = duration / static_cast<double>(steps);

    Matrix block = Matrix::Zero(2 * dim, 2 * dim);
    block.topLeftCorner(dim, dim) = -gen.drift * h;
    block.topRightCorner(dim, dim) = gen.diffusion * h;
    block.bottomRightCorner(dim, dim) = gen.drift.transpose() * h;
    const Matrix e = block.exp();
    ChunkMap out;
    out.map.phi = e.bottomRightCorner(dim, dim).transpose();
    out.map.q = out.map.phi * e.topRightCorner(dim, dim);
    symmetrize(out.map.q);
    out.steps = steps;
    out.h = h;
    return out;
}

template <int D>
LinearMap integrate_map(const GeneratorPair &gen, double duration, double dt_max) {
    using Square = Eigen::Matrix<double, D, D>;
    using State = Eigen::Matrix<double, D, 2 * D>;
    Matrix f(D, D), n(D, D);
    auto rhs = [&gen, &f, &n](double t, const State &y) -> State {
        gen.at(t, f, n);
        const Square fs = f;
        const Square phi = y.template leftCols<D>();
        const Square q = y.template rightCols<D>();
        const Square fq = fs * q;
        State dy;
        dy.template leftCols<D>() = fs * phi;
        dy.template rightCols<D>() = fq + fq.transpose() + Square(n);
        return dy;
    };
    Rk4Options opt;
    opt.dt_max = dt_max;
    opt.rtol = 1e-10;
    opt.breakpoints = gen.breakpoints;
    State y0;
    y0 << Square::Identity(), Square::Zero();
    const State y = integrate_rk4(rhs, y0, 0.0, duration, opt, [](State &s) {
        const Square q = s.template rightCols<D>();
        s.template rightCols<D>() = 0.5 * (q + q.transpose());
    });
    return {y.template leftCols<D>(), y.template rightCols<D>()};
}

LinearMap integrate_map_dynamic(const GeneratorPair &gen, double duration, double dt_max) {
    const Eigen::Index dim = gen.dim();
    Matrix f(dim, dim), n(dim, dim);
    auto rhs = [&gen, &f, &n, dim](double t, const Matrix &y) -> Matrix {
        gen.at(t, f, n);
        Matrix dy(dim, 2 * dim);
        const Matrix fq = f * y.rightCols(dim);
        dy.leftCols(dim) = f * y.leftCols(dim);
        dy.rightCols(dim) = fq + fq.transpose() + n;
        return dy;
    };
    Rk4Options opt;
    opt.dt_max = dt_max;
    opt.rtol = 1e-10;
    opt.breakpoints = gen.breakpoints;
    Matrix y0(dim, 2 * dim);
    y0 << Matrix::Identity(dim, dim), Matrix::Zero(dim, dim);
    const Matrix y = integrate_rk4(rhs, y0, 0.0, duration, opt, [dim](Matrix &s) {
        const Matrix q = s.rightCols(dim);
        s.rightCols(dim) = 0.5 * (q + q.transpose());
    });
    return {y.leftCols(dim), y.rightCols(dim)};
}

}  // namespace

void GeneratorPair::at(double t, Matrix &f, Matrix &n) const {
    if (evaluator) {
        evaluator(t, f, n);
    } else {
        f = drift;
        n = diffusion;
    }
}

bool is_valid_diffusion(const Matrix &diffusion, double tol) {
    if ((diffusion - diffusion.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + diffusion.cwiseAbs().maxCoeff())) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diffusion, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol * std::max(1.0, diffusion.cwiseAbs().maxCoeff());
}

GeneratorPair build_blue_generators(const SystemParams &p, double gamma_sq, double kappa_c) {
    require_rate("gamma_sq", gamma_sq);
    require_rate("kappa_c", kappa_c);
    const double eps = p.epsilon();
    const double s = std::sqrt(p.lambda_t * kappa_c * gamma_sq);
    const double mech = (1.0 - eps) * gamma_sq - p.gamma_m;
    const double noise = (1.0 + eps) * gamma_sq + p.gamma_m * (2.0 * p.nbar + 1.0);

    GeneratorPair gen;
    gen.drift.resize(4, 4);
    gen.drift << mech, 0, 0, 0,
                 0, mech, 0, 0,
                 -2 * s, 0, -kappa_c, 0,
                 0, 2 * s, 0, -kappa_c;
    gen.drift *= 0.5;
    gen.diffusion.resize(4, 4);
    gen.diffusion << noise, 0, -s, 0,
                     0, noise, 0, s,
                     -s, 0, kappa_c, 0,
                     0, s, 0, kappa_c;
    gen.diffusion *= 0.5;
    return gen;
}

void red_generators_at(const SystemParams &p, double gamma_bs, double kappa_c, Matrix &drift,
                       Matrix &diffusion) {
    const double eps = p.epsilon();
    const double s = std::sqrt(p.lambda_t * kappa_c * gamma_bs);
    const double mech = -(1.0 - eps) * gamma_bs - p.gamma_m;
    const double noise = (1.0 + eps) * gamma_bs + p.gamma_m * (2.0 * p.nbar + 1.0);
    drift.resize(4, 4);
    drift << mech, 0, 0, 0,
             0, mech, 0, 0,
             -2 * s, 0, -kappa_c, 0,
             0, -2 * s, 0, -kappa_c;
    drift *= 0.5;
    diffusion.resize(4, 4);
    diffusion << noise, 0, s, 0,
                 0, noise, 0, s,
                 s, 0, kappa_c, 0,
                 0, s, 0, kappa_c;
    diffusion *= 0.5;
}

GeneratorPair build_red_generators(const SystemParams &p, RateProfile gamma_bs,
                                   RateProfile kappa_c, double horizon,
                                   std::vector<double> breakpoints) {
    if (!(horizon >= 0.0)) {
        throw InvalidArgument(fmt::format("build_red_generators: horizon must be >= 0, got {}", horizon));
    }
    for (int i = 0; i < kProfileSamples; ++i) {
        const double t = horizon * i / (kProfileSamples - 1);
        const double gb = gamma_bs(t);
        const double kc = kappa_c(t);
        if (!(gb >= 0.0) || !(kc >= 0.0)) {
            throw InvalidProfile(fmt::format(
                "red pulse profile negative or non-finite at t={}: gamma_bs={}, kappa_c={}", t, gb, kc));
        }
    }
    GeneratorPair gen;
    red_generators_at(p, gamma_bs(0.0), kappa_c(0.0), gen.drift, gen.diffusion);
    gen.breakpoints = std::move(breakpoints);
    gen.evaluator = [p, gamma_bs = std::move(gamma_bs), kappa_c = std::move(kappa_c)](
                        double t, Matrix &f, Matrix &n) {
        red_generators_at(p, gamma_bs(t), kappa_c(t), f, n);
    };
    return gen;
}

GeneratorPair build_full_generators(const SystemParams &p, double detuning, double g,
                                    double kappa_c) {
    require_rate("kappa_c", kappa_c);
    return generators_from_lindblad(full_model(p, detuning, g, kappa_c));
}

GeneratorPair build_full_generators(const SystemParams &p, double detuning,
                                    std::function<double(double)> g, double kappa_c,
                                    double horizon) {
    require_rate("kappa_c", kappa_c);
    GeneratorPair gen = generators_from_lindblad(full_model(p, detuning, g(0.0), kappa_c));

    const double bound = std::max(p.kappa_lc, std::abs(detuning)) / 10.0;
    if (horizon > 0.0) {
        const double h = horizon / (kProfileSamples - 1);
        for (int i = 0; i + 1 < kProfileSamples; ++i) {
            const double t = i * h;
            const double g0 = g(t);
            const double g1 = g(t + h);
            const double mid = 0.5 * (std::abs(g0) + std::abs(g1));
            if (mid > 0.0 && std::abs(g1 - g0) / h > bound * mid) {
                gen.warnings.push_back(fmt::format(
                    "coupling varies too fast near t={}: |g'/g|={} exceeds max(kappa_lc,|Delta|)/10={}",
                    t, std::abs(g1 - g0) / (h * mid), bound));
                break;
            }
        }
    }
    gen.evaluator = [p, detuning, g = std::move(g), kappa_c](double t, Matrix &f, Matrix &n) {
        lindblad_to_lyapunov(full_model(p, detuning, g(t), kappa_c), f, n);
    };
    return gen;
}

LindbladModel::LindbladModel(std::size_t n)
    : n_modes(n), hamiltonian(Matrix::Zero(2 * n, 2 * n)) {}

void LindbladModel::add_hamiltonian(Complex coef, const Eigen::VectorXcd &u,
                                    const Eigen::VectorXcd &v) {
    // X^T A X + h.c. with A = coef u v^T; the symmetric real part is what
    // survives up to a constant.
    const Eigen::MatrixXcd a = coef * u * v.transpose();
    const Matrix herm = (a + a.conjugate()).real();
    hamiltonian += herm + herm.transpose();
}

void LindbladModel::add_jump(double rate, const Eigen::VectorXcd &c) {
    if (rate < 0.0) {
        throw InvalidArgument(fmt::format("negative dissipation rate {}", rate));
    }
    if (rate > 0.0) jumps.push_back(std::sqrt(rate) * c);
}

Eigen::VectorXcd annihilator(std::size_t n_modes, std::size_t k) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * n_modes);
    c(2 * k) = 1.0 / std::sqrt(2.0);
    c(2 * k + 1) = Complex(0.0, 1.0 / std::sqrt(2.0));
    return c;
}

Eigen::VectorXcd creator(std::size_t n_modes, std::size_t k) {
    return annihilator(n_modes, k).conjugate();
}

void lindblad_to_lyapunov(const LindbladModel &model, Matrix &drift, Matrix &diffusion) {
    const auto dim = static_cast<Eigen::Index>(2 * model.n_modes);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &c : model.jumps) m += c.conjugate() * c.transpose();
    const Matrix omega = symplectic_form(model.n_modes);
    drift = omega * (model.hamiltonian + m.imag());
    diffusion = omega * m.real() * omega.transpose();
    symmetrize(diffusion);
}

GeneratorPair generators_from_lindblad(const LindbladModel &model) {
    GeneratorPair gen;
    lindblad_to_lyapunov(model, gen.drift, gen.diffusion);
    return gen;
}

GeneratorPair embed_generators(const GeneratorPair &gen, std::vector<std::size_t> modes,
                               std::size_t n_modes) {
    if (static_cast<Eigen::Index>(2 * modes.size()) != gen.dim()) {
        throw InvalidArgument("embed_generators: mode list does not match generator dimension");
    }
    for (auto k : modes) {
        if (k >= n_modes) throw InvalidArgument("embed_generators: mode index out of range");
    }
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    auto place = [modes, dim](const Matrix &small, Matrix &big) {
        big.setZero(dim, dim);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = 0; j < modes.size(); ++j) {
                big.block<2, 2>(2 * modes[i], 2 * modes[j]) = small.block<2, 2>(2 * i, 2 * j);
            }
        }
    };
    GeneratorPair out;
    place(gen.drift, out.drift);
    place(gen.diffusion, out.diffusion);
    out.breakpoints = gen.breakpoints;
    out.warnings = gen.warnings;
    if (gen.time_dependent()) {
        out.evaluator = [inner = gen.evaluator, place](double t, Matrix &f, Matrix &n) {
            Matrix fs, ns;
            inner(t, fs, ns);
            place(fs, f);
            place(ns, n);
        };
    }
    return out;
}

GaussianState propagate(const GaussianState &state, const GeneratorPair &gen, double duration,
                        double dt_max) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw InvalidArgument(fmt::format("propagate: duration must be >= 0, got {}", duration));
    }
    if (gen.dim() != state.cov().rows()) {
        throw InvalidArgument(fmt::format("propagate: generator dimension {} does not match state dimension {}",
                                          gen.dim(), state.cov().rows()));
    }
    if (duration == 0.0) return state;
    const Eigen::Index dim = gen.dim();

    if (!gen.time_dependent()) {
        const ChunkMap chunk = constant_chunk(gen, duration, dt_max);
        const Matrix &phi = chunk.map.phi;
        const Matrix &q = chunk.map.q;
        const long steps = chunk.steps;
        const double h = chunk.h;

        Matrix sigma = state.cov();
        for (long k = 0; k < steps; ++k) {
            sigma = (phi * sigma * phi.transpose() + q).eval();
            symmetrize(sigma);
            if (!sigma.allFinite()) {
                throw DivergenceError((k + 1) * h, fmt::format("covariance diverged at t={}", (k + 1) * h));
            }
        }
        return state.with_cov(std::move(sigma));
    }

    Matrix f(dim, dim), n(dim, dim);
    auto rhs = [&gen, &f, &n](double t, const Matrix &sigma) -> Matrix {
        gen.at(t, f, n);
        Matrix fs = f * sigma;
        return fs + fs.transpose() + n;
    };
    Rk4Options opt;
    opt.dt_max = dt_max;
    opt.rtol = 1e-10;
    opt.breakpoints = gen.breakpoints;
    Matrix sigma = integrate_rk4(rhs, state.cov(), 0.0, duration, opt, [](Matrix &s) { symmetrize(s); });
    return state.with_cov(std::move(sigma));
}

LinearMap propagator(const GeneratorPair &gen, double duration, double dt_max) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw InvalidArgument(fmt::format("propagator: duration must be >= 0, got {}", duration));
    }
    const Eigen::Index dim = gen.dim();
    if (duration == 0.0) return {Matrix::Identity(dim, dim), Matrix::Zero(dim, dim)};

    if (!gen.time_dependent()) {
        const ChunkMap chunk = constant_chunk(gen, duration, dt_max);
        LinearMap total = chunk.map;
        for (long k = 1; k < chunk.steps; ++k) {
            total.q = (chunk.map.phi * total.q * chunk.map.phi.transpose() + chunk.map.q).eval();
            symmetrize(total.q);
            total.phi = (chunk.map.phi * total.phi).eval();
        }
        if (!total.phi.allFinite() || !total.q.allFinite()) {
            throw DivergenceError(duration, "propagator diverged");
        }
        return total;
    }
    switch (dim) {
        case 4:
            return integrate_map<4>(gen, duration, dt_max);
        case 6:
            return integrate_map<6>(gen, duration, dt_max);
        default:
            return integrate_map_dynamic(gen, duration, dt_max);
    }
}

GaussianState apply_map(const GaussianState &state, const LinearMap &map,
                        const std::vector<std::size_t> &modes) {
    const auto k = static_cast<Eigen::Index>(2 * modes.size());
    if (map.phi.rows() != k || map.q.rows() != k) {
        throw InvalidArgument("apply_map: map dimension does not match mode list");
    }
    const auto dim = state.cov().rows();
    std::vector<Eigen::Index> idx;
    for (auto m : modes) {
        if (static_cast<Eigen::Index>(2 * m + 1) >= dim) throw InvalidArgument("apply_map: mode index out of range");
        idx.push_back(static_cast<Eigen::Index>(2 * m));
        idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
    }
    std::vector<Eigen::Index> rest;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(i);
    }

    const Matrix &cov = state.cov();
    Matrix sub(k, k);
    Matrix cross(k, static_cast<Eigen::Index>(rest.size()));
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = cov(idx[i], idx[j]);
        for (std::size_t j = 0; j < rest.size(); ++j) cross(i, static_cast<Eigen::Index>(j)) = cov(idx[i], rest[j]);
    }
    Matrix new_sub = map.phi * sub * map.phi.transpose() + map.q;
    symmetrize(new_sub);
    const Matrix new_cross = map.phi * cross;
    Vector mean = state.mean();
    const Vector new_mean_sub = map.phi * mean(idx);
    for (Eigen::Index i = 0; i < k; ++i) mean(idx[i]) = new_mean_sub(i);

    Matrix out = cov;
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) out(idx[i], idx[j]) = new_sub(i, j);
        for (std::size_t j = 0; j < rest.size(); ++j) {
            out(idx[i], rest[j]) = new_cross(i, static_cast<Eigen::Index>(j));
            out(rest[j], idx[i]) = new_cross(i, static_cast<Eigen::Index>(j));
        }
    }
    if (!out.allFinite()) throw DivergenceError(0.0, "apply_map: covariance is not finite");
    return GaussianState(state.labels(), std::move(mean), std::move(out));
}

AdiabaticComparison compare_full_to_adiabatic(const SystemParams &p, double g, double kappa_c,
                                              double duration) {
    const double detuning = p.omega_m;
    const double gamma_sq = p.scattering_rate(g);

    const GaussianState initial2 = tensor_product(thermal_state(p.n0, "m"), vacuum_state(1, {"c"}));
    const GaussianState adiabatic =
        propagate(initial2, build_blue_generators(p, gamma_sq, kappa_c), duration, duration);

    const GaussianState initial3 = tensor_product(thermal_state(p.n0, "m"), vacuum_state(2, {"lc", "c"}));
    const GaussianState full =
        propagate(initial3, build_full_generators(p, detuning, g, kappa_c), duration, duration);

    // Undo the free mechanical rotation and the drive-frame cavity phase; the
    // quarter turn on the cavity matches the phase convention of the adiabatic matrices.
    const double pi = std::acos(-1.0);
    GaussianState aligned = rotate_mode(full, "m", p.omega_m * duration);
    aligned = rotate_mode(aligned, "c", -detuning * duration + 0.5 * pi);
    const GaussianState reduced = partial_trace(aligned, {"m", "c"});

    AdiabaticComparison out;
    out.full = reduced.cov();
    out.adiabatic = adiabatic.cov();
    out.max_relative_error =
        (out.full - out.adiabatic).cwiseAbs().maxCoeff() / out.adiabatic.cwiseAbs().maxCoeff();
    return out;
}

}  // namespace embell
