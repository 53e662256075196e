// Copyright 2026 The qmlbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Fisher-Lee transmission by full inversion of the L^3 x L^3 Green's
// function. Lead self-energies come from a numerical eigendecomposition of
// the slice Hamiltonian and the root of g^2 - e g + 1 = 0 with Im g < 0
// (or |g| < 1 outside the band).

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

inline Eigen::MatrixXd slice(unsigned L)
{
    const auto N = static_cast<Eigen::Index>(L * L);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
    for (unsigned a = 0; a < L; ++a)
        for (unsigned b = 0; b < L; ++b) {
            const auto s = static_cast<Eigen::Index>(a * L + b);
            if (b + 1 < L)
                h(s, s + 1) = h(s + 1, s) = -1;
            if (a + 1 < L)
                h(s, s + L) = h(s + L, s) = -1;
        }
    return h;
}

inline cd chain_surface(double e)
{
    const cd disc = std::sqrt(cd(e * e - 4.0, 0.0));
    cd g1 = (e + disc) / 2.0, g2 = (e - disc) / 2.0;
    if (std::abs(e) < 2.0)
        return g1.imag() < 0 ? g1 : g2;
    return std::abs(g1) < std::abs(g2) ? g1 : g2;
}

inline Eigen::MatrixXcd self_energy(double E, unsigned L)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(slice(L));
    const auto N = static_cast<Eigen::Index>(L * L);
    Eigen::VectorXcd g(N);
    for (Eigen::Index k = 0; k < N; ++k)
        g(k) = chain_surface(E - es.eigenvalues()(k));
    const Eigen::MatrixXcd U = es.eigenvectors().cast<cd>();
    return U * g.asDiagonal() * U.transpose();
}

/// potential is slice-major: potential[n L^2 + s].
inline double transmission(double E, unsigned L, const std::vector<double>& potential)
{
    const auto S = static_cast<Eigen::Index>(L * L);
    const auto N = S * L;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    const Eigen::MatrixXd h = slice(L);
    for (unsigned n = 0; n < L; ++n) {
        A.block(n * S, n * S, S, S) = -h.cast<cd>();
        for (Eigen::Index s = 0; s < S; ++s)
            A(n * S + s, n * S + s) += E - potential[static_cast<std::size_t>(n * S + s)];
        if (n + 1 < L)
            for (Eigen::Index s = 0; s < S; ++s) {
                A(n * S + s, (n + 1) * S + s) = 1.0; // E - H with H = -1
                A((n + 1) * S + s, n * S + s) = 1.0;
            }
    }
    const Eigen::MatrixXcd sigma = self_energy(E, L);
    A.block(0, 0, S, S) -= sigma;
    A.block((L - 1) * S, (L - 1) * S, S, S) -= sigma;
    const Eigen::MatrixXcd G = A.inverse();
    const Eigen::MatrixXcd gamma = cd(0, 1) * (sigma - sigma.adjoint());
    const Eigen::MatrixXcd g1L = G.block(0, (L - 1) * S, S, S);
    return (gamma * g1L * gamma * g1L.adjoint()).trace().real();
}

} // namespace oracle
