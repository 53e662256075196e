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

#include <utility>

#include "qmlbench/common.hpp"

namespace qmlbench::preprocess {

/// Column means and population standard deviations; zero deviations are
/// stored as 1 so constant columns map to all zeros.
struct ScalerParams {
    Vector means;
    Vector stds;
};

ScalerParams fit_scaler(const Matrix& X);
Matrix apply_scaler(const ScalerParams& params, const Matrix& X);
std::pair<ScalerParams, Matrix> fit_apply_scaler(const Matrix& X);

struct PCAParams {
    Matrix components;          // k x d, orthonormal rows
    Vector column_means;        // d
    Vector explained_variance;  // k, non-increasing (population covariance)
    double total_variance = 0.0;
};

/// Top-k eigenvectors of the population covariance of X. Each component is
/// signed so its largest-magnitude entry is positive.
PCAParams fit_pca(const Matrix& X, Eigen::Index k);
Matrix project_pca(const PCAParams& params, const Matrix& X);
std::pair<PCAParams, Matrix> fit_pca_project(const Matrix& X, Eigen::Index k);

/// Per-column affine map of [min, max] onto [lo, hi]; constant columns go
/// to the midpoint.
struct MinMaxParams {
    Vector mins;
    Vector maxs;
    double lo = -1.0;
    double hi = 1.0;
};

MinMaxParams fit_minmax(const Matrix& X, double lo, double hi);
Matrix apply_minmax(const MinMaxParams& params, const Matrix& X);

} // namespace qmlbench::preprocess
