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

#include "embell/oracle/fock.hpp"

#include <cmath>

#include <fmt/format.h>

#include "embell/errors.hpp"

namespace embell::oracle {

namespace {

constexpr int kMaxCutoff = 1 << 14;

// Index of |n> (x) |q> in the cavity (x) qubit space; q = 0 is g, q = 1 is e.
int cq(int n, int q) { return 2 * n + q; }

FockVector tms_at(double r, double phi, int cutoff) {
    FockVector psi;
    psi.cutoff = cutoff;
    psi.modes = 2;
    psi.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff) * cutoff);
    const Complex ratio = -std::polar(std::tanh(r), phi);
    Complex c = 1.0 / std::cosh(r);
    for (int n = 0; n < cutoff; ++n) {
        psi.amplitudes(n * cutoff + n) = c;
        c *= ratio;
    }
    return psi;
}

}  // namespace

int default_tms_cutoff(double r) {
    const double s = std::sinh(r);
    return std::max(20, static_cast<int>(std::ceil(10.0 * s * s)));
}

FockVector tms_fock_state(double r, double phi, std::optional<int> cutoff) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidArgument(fmt::format("tms_fock_state: r must be >= 0, got {}", r));
    }
    const double s2 = std::sinh(r) * std::sinh(r);
    if (cutoff) {
        if (*cutoff < 10.0 * std::max(1.0, s2)) {
            throw InvalidArgument(fmt::format("tms_fock_state: cutoff {} below 10 max(1, sinh^2 r) = {}",
                                              *cutoff, 10.0 * std::max(1.0, s2)));
        }
        FockVector psi = tms_at(r, phi, *cutoff);
        if (psi.norm_deficit() > kNormDeficitTolerance) {
            throw CutoffTooSmall(fmt::format("tms_fock_state: norm deficit {} at cutoff {}",
                                             psi.norm_deficit(), *cutoff));
        }
        return psi;
    }
    for (int n = default_tms_cutoff(r); n <= kMaxCutoff; n *= 2) {
        FockVector psi = tms_at(r, phi, n);
        if (psi.norm_deficit() < kNormDeficitTolerance) return psi;
    }
    throw CutoffTooSmall(fmt::format("tms_fock_state: no cutoff up to {} reaches the norm bound for r={}",
                                     kMaxCutoff, r));
}

Eigen::VectorXcd coherent_amplitudes(Complex alpha, int cutoff) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cutoff);
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        if (cutoff > 0) c(0) = 1.0;
        return c;
    }
    const double log_mag = std::log(mag);
    const double arg = std::arg(alpha);
    for (int n = 0; n < cutoff; ++n) {
        const double log_abs = -0.5 * mag * mag + n * log_mag - 0.5 * std::lgamma(n + 1.0);
        c(n) = std::polar(std::exp(log_abs), n * arg);
    }
    return c;
}

FockVector coherent_fock_state(Complex alpha, int cutoff) {
    FockVector psi;
    psi.cutoff = cutoff;
    psi.modes = 1;
    psi.amplitudes = coherent_amplitudes(alpha, cutoff);
    if (psi.norm_deficit() > kNormDeficitTolerance) {
        throw CutoffTooSmall(fmt::format("coherent_fock_state: norm deficit {} at cutoff {} for |alpha|={}",
                                         psi.norm_deficit(), cutoff, std::abs(alpha)));
    }
    return psi;
}

double coherent_projection_fock(const FockVector &psi, Complex alpha, Complex beta) {
    if (psi.norm_deficit() > kNormDeficitTolerance) {
        throw CutoffTooSmall(fmt::format("coherent_projection_fock: state has norm deficit {}", psi.norm_deficit()));
    }
    const Eigen::VectorXcd a = coherent_amplitudes(alpha, psi.cutoff);
    if (psi.modes == 1) {
        return std::norm(a.dot(psi.amplitudes));
    }
    if (psi.modes != 2) {
        throw InvalidArgument(fmt::format("coherent_projection_fock: unsupported mode count {}", psi.modes));
    }
    const Eigen::VectorXcd b = coherent_amplitudes(beta, psi.cutoff);
    Complex overlap = 0.0;
    for (int i = 0; i < psi.cutoff; ++i) {
        for (int j = 0; j < psi.cutoff; ++j) {
            overlap += std::conj(a(i)) * std::conj(b(j)) * psi.at(i, j);
        }
    }
    return std::norm(overlap);
}

Eigen::MatrixXcd displacement_matrix(Complex beta, int cutoff) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    const double x = std::norm(beta);
    if (x == 0.0) return Eigen::MatrixXcd::Identity(cutoff, cutoff);
    const double log_mag = 0.5 * std::log(x);
    for (int m = 0; m < cutoff; ++m) {
        for (int n = 0; n < cutoff; ++n) {
            const int lo = std::min(m, n);
            const int k = std::abs(m - n);
            const Complex base = m >= n ? beta : -std::conj(beta);
            const double log_abs = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) + k * log_mag - 0.5 * x;
            const double lag = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), x);
            d(m, n) = std::polar(std::exp(log_abs), k * std::arg(base)) * lag;
        }
    }
    return d;
}

Eigen::MatrixXcd thermal_density(double nbar, int cutoff) {
    if (!(nbar >= 0.0)) throw InvalidArgument(fmt::format("thermal_density: nbar must be >= 0, got {}", nbar));
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    const double q = nbar / (nbar + 1.0);
    double w = 1.0 / (nbar + 1.0);
    for (int n = 0; n < cutoff; ++n) {
        rho(n, n) = w;
        w *= q;
    }
    return rho;
}

PovmCheck qubit_pi_pulse_povm(int cutoff) {
    if (cutoff < 2) throw InvalidArgument(fmt::format("qubit_pi_pulse_povm: cutoff must be >= 2, got {}", cutoff));
    const int dim = 2 * cutoff;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    u(cq(0, 1), cq(0, 0)) = 1.0;
    u(cq(0, 0), cq(0, 1)) = 1.0;
    for (int l = 1; l < cutoff; ++l) {
        u(cq(l, 0), cq(l, 0)) = 1.0;
        u(cq(l, 1), cq(l, 1)) = 1.0;
    }

    PovmCheck check;
    check.unitarity_defect = (u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (check.unitarity_defect > 1e-12) {
        throw NumericalError(fmt::format("qubit_pi_pulse_povm: U_pi unitarity defect {}", check.unitarity_defect));
    }
    check.M_e.resize(cutoff, cutoff);
    check.M_g.resize(cutoff, cutoff);
    for (int m = 0; m < cutoff; ++m) {
        for (int n = 0; n < cutoff; ++n) {
            check.M_e(m, n) = u(cq(m, 1), cq(n, 0));
            check.M_g(m, n) = u(cq(m, 0), cq(n, 0));
        }
    }
    Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    vac(0, 0) = 1.0;
    check.M_e_is_vacuum_projector = (check.M_e.array() == vac.array()).all();
    const Eigen::MatrixXcd complement = Eigen::MatrixXcd::Identity(cutoff, cutoff) - vac;
    check.M_g_is_complement = (check.M_g.array() == complement.array()).all();
    return check;
}

double excited_probability(const Eigen::MatrixXcd &rho, Complex alpha) {
    const int cutoff = static_cast<int>(rho.rows());
    if (rho.cols() != cutoff || cutoff < 2) {
        throw InvalidArgument("excited_probability: need a square density matrix of size >= 2");
    }
    const Eigen::MatrixXcd d = displacement_matrix(-alpha, cutoff);
    const Eigen::MatrixXcd shifted = d * rho * d.adjoint();

    const int dim = 2 * cutoff;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    u(cq(0, 1), cq(0, 0)) = 1.0;
    u(cq(0, 0), cq(0, 1)) = 1.0;
    for (int l = 1; l < cutoff; ++l) {
        u(cq(l, 0), cq(l, 0)) = 1.0;
        u(cq(l, 1), cq(l, 1)) = 1.0;
    }
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < cutoff; ++m) {
        for (int n = 0; n < cutoff; ++n) joint(cq(m, 0), cq(n, 0)) = shifted(m, n);
    }
    const Eigen::MatrixXcd out = u * joint * u.adjoint();
    double p = 0.0;
    for (int n = 0; n < cutoff; ++n) p += out(cq(n, 1), cq(n, 1)).real();
    return p;
}

}  // namespace embell::oracle
