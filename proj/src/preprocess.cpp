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

#include "qmlbench/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qmlbench::preprocess {

ScalerParams fit_scaler(const Matrix& X)
{
    if (X.rows() < 1 || X.cols() < 1)
        throw std::invalid_argument("fit_scaler: empty matrix");
    ScalerParams p;
    p.means = X.colwise().mean().transpose();
    p.stds.resize(X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double var = (X.col(c).array() - p.means(c)).square().mean();
        const double sd = std::sqrt(var);
        p.stds(c) = sd > 0.0 ? sd : 1.0;
    }
    return p;
}

Matrix apply_scaler(const ScalerParams& params, const Matrix& X)
{
    if (X.cols() != params.means.size())
        throw std::invalid_argument("apply_scaler: column count mismatch");
    Matrix out = X;
    for (Eigen::Index c = 0; c < X.cols(); ++c)
        out.col(c) = (X.col(c).array() - params.means(c)) / params.stds(c);
    return out;
}

std::pair<ScalerParams, Matrix> fit_apply_scaler(const Matrix& X)
{
    auto p = fit_scaler(X);
    auto scaled = apply_scaler(p, X);
    return {std::move(p), std::move(scaled)};
}

PCAParams fit_pca(const Matrix& X, Eigen::Index k)
{
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (k < 1 || k > d)
        throw std::invalid_argument("fit_pca: k=" + std::to_string(k) + " must be in [1, " + std::to_string(d) + "]");
    if (d > n)
        throw std::invalid_argument("fit_pca: needs at least as many rows as columns");

    PCAParams p;
    p.column_means = X.colwise().mean().transpose();
    const Matrix centered = X.rowwise() - p.column_means.transpose();
    const Matrix cov = (centered.transpose() * centered) / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("fit_pca: eigendecomposition failed");
    // Eigen returns ascending eigenvalues.
    p.components.resize(k, d);
    p.explained_variance.resize(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const Eigen::Index src = d - 1 - r;
        Vector v = eig.eigenvectors().col(src);
        Eigen::Index arg;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0)
            v = -v;
        p.components.row(r) = v.transpose();
        p.explained_variance(r) = std::max(0.0, eig.eigenvalues()(src));
    }
    p.total_variance = std::max(0.0, eig.eigenvalues().sum());
    return p;
}

Matrix project_pca(const PCAParams& params, const Matrix& X)
{
    if (X.cols() != params.column_means.size())
        throw std::invalid_argument("project_pca: column count mismatch");
    return (X.rowwise() - params.column_means.transpose()) * params.components.transpose();
}

std::pair<PCAParams, Matrix> fit_pca_project(const Matrix& X, Eigen::Index k)
{
    auto p = fit_pca(X, k);
    auto projected = project_pca(p, X);
    return {std::move(p), std::move(projected)};
}

MinMaxParams fit_minmax(const Matrix& X, double lo, double hi)
{
    if (X.rows() < 1)
        throw std::invalid_argument("fit_minmax: empty matrix");
    if (!(hi > lo))
        throw std::invalid_argument("fit_minmax: hi must exceed lo");
    return {X.colwise().minCoeff().transpose(), X.colwise().maxCoeff().transpose(), lo, hi};
}

Matrix apply_minmax(const MinMaxParams& params, const Matrix& X)
{
    if (X.cols() != params.mins.size())
        throw std::invalid_argument("apply_minmax: column count mismatch");
    Matrix out(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double span = params.maxs(c) - params.mins(c);
        if (span <= 0.0) {
            out.col(c).setConstant((params.lo + params.hi) / 2.0);
            continue;
        }
        out.col(c) = params.lo + (X.col(c).array() - params.mins(c)) * ((params.hi - params.lo) / span);
    }
    return out;
}

} // namespace qmlbench::preprocess
