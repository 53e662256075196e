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

// Projected-gradient solver for the soft-margin SVM dual
//   min 1/2 a'Qa - 1'a,  0 <= a <= C,  y'a = 0,
// with the projection onto the feasible set found by bisection on the
// equality multiplier. Slow, simple, and independent of SMO.

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::VectorXd project(const Eigen::VectorXd& v, const Eigen::VectorXd& y, double C)
{
    auto at = [&](double mu) {
        Eigen::VectorXd a = v - mu * y;
        return a.cwiseMax(0.0).cwiseMin(C).eval();
    };
    double lo = -1e6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (y.dot(at(mid)) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return at(0.5 * (lo + hi));
}

struct DualSolution {
    Eigen::VectorXd alpha;
    double objective;
};

inline DualSolution solve_dual(const Eigen::MatrixXd& K, const std::vector<int>& ypm, double C, int iters = 200000)
{
    const auto n = K.rows();
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i)
        y(i) = ypm[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd Q = y.asDiagonal() * K * y.asDiagonal();
    const double L = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q).eigenvalues().maxCoeff();
    const double step = 1.0 / std::max(L, 1e-12);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (int it = 0; it < iters; ++it)
        a = project(a - step * (Q * a - Eigen::VectorXd::Ones(n)), y, C);
    return {a, 0.5 * a.dot(Q * a) - a.sum()};
}

} // namespace oracle
