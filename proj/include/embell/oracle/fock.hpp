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

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace embell::oracle {

using Complex = std::complex<double>;

inline constexpr double kNormDeficitTolerance = 1e-8;

/// Truncated Fock amplitudes; two-mode vectors are row-major (n1 * cutoff + n2).
struct FockVector {
    int cutoff = 0;
    int modes = 1;
    Eigen::VectorXcd amplitudes;

    Complex at(int n) const { return amplitudes(n); }
    Complex at(int n1, int n2) const { return amplitudes(n1 * cutoff + n2); }
    double norm_deficit() const { return 1.0 - amplitudes.squaredNorm(); }
};

/// Default starting cutoff max(20, ceil(10 sinh^2 r)).
int default_tms_cutoff(double r);

/**
 * sech r sum_n (-e^{i phi} tanh r)^n |n, n>.
 *
 * Without a cutoff, starts at default_tms_cutoff and doubles until the norm
 * deficit is below 1e-8. An explicit cutoff must be at least 10 max(1, sinh^2 r)
 * (InvalidArgument) and must meet the deficit bound (CutoffTooSmall).
 */
FockVector tms_fock_state(double r, double phi, std::optional<int> cutoff = std::nullopt);

/// Truncated coherent state |alpha>; CutoffTooSmall if the deficit exceeds 1e-8.
FockVector coherent_fock_state(Complex alpha, int cutoff);

/// <n|alpha> for n < cutoff, from log-factorials.
Eigen::VectorXcd coherent_amplitudes(Complex alpha, int cutoff);

/// |<alpha|psi>|^2 (one mode) or |<alpha, beta|psi>|^2 (two modes).
double coherent_projection_fock(const FockVector &psi, Complex alpha, Complex beta = {});

/// <m|D(beta)|n> for m, n < cutoff, via associated Laguerre polynomials.
Eigen::MatrixXcd displacement_matrix(Complex beta, int cutoff);

/// Thermal density matrix diag((nbar)^n / (nbar+1)^{n+1}) truncated at cutoff.
Eigen::MatrixXcd thermal_density(double nbar, int cutoff);

struct PovmCheck {
    Eigen::MatrixXcd M_e;
    Eigen::MatrixXcd M_g;
    double unitarity_defect = 0.0;
    bool M_e_is_vacuum_projector = false;  ///< exact equality, no tolerance
    bool M_g_is_complement = false;
};

/**
 * Builds U_pi = |0,e><0,g| + |0,g><0,e| + sum_{l>=1} |l><l| (x) 1 on the truncated
 * cavity (x) qubit space and forms M_r = <r|U_pi|g>. Throws NumericalError if
 * U_pi fails unitarity by more than 1e-12.
 */
PovmCheck qubit_pi_pulse_povm(int cutoff);

/// Excited-state probability after displacing rho by -alpha, applying U_pi to
/// rho (x) |g><g| and reading the qubit. Equals <alpha|rho|alpha>.
double excited_probability(const Eigen::MatrixXcd &rho, Complex alpha);

}  // namespace embell::oracle
