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

#include <doctest.h>

#include <cmath>

#include "qmlbench/common.hpp"
#include "qmlbench/preprocess.hpp"

using namespace qmlbench;
using namespace qmlbench::preprocess;

namespace {

Matrix random_matrix(Eigen::Index n, Eigen::Index d, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix X(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            X(i, j) = rng.uniform(-3, 3) * (j + 1);
    return X;
}

} // namespace

TEST_CASE("scaler examples")
{
    Matrix X(3, 1);
    X << 1, 2, 3;
    const auto [p, Z] = fit_apply_scaler(X);
    CHECK(Z(0, 0) == doctest::Approx(-1.224744871391589));
    CHECK(std::abs(Z(1, 0)) < 1e-15);
    CHECK(Z(2, 0) == doctest::Approx(1.224744871391589));

    Matrix C(2, 1);
    C << 5, 5;
    const auto [pc, Zc] = fit_apply_scaler(C);
    CHECK(pc.stds(0) == 1.0);
    CHECK(Zc(0, 0) == 0.0);
    CHECK(Zc(1, 0) == 0.0);

    const auto [p2, Z2] = fit_apply_scaler(Z);
    CHECK((Z2 - Z).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS(fit_scaler(Matrix(0, 2)), std::invalid_argument);
}

TEST_CASE("scaled columns have zero mean and unit population std")
{
    const Matrix X = random_matrix(40, 4, 2);
    const auto [p, Z] = fit_apply_scaler(X);
    for (Eigen::Index j = 0; j < 4; ++j) {
        const double mean = Z.col(j).mean();
        const double var = (Z.col(j).array() - mean).square().mean();
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var) - 1) < 1e-9);
        CHECK(p.stds(j) > 0);
    }
}

TEST_CASE("PCA on rank-one data")
{
    Matrix X(5, 2);
    X << 1, 1, 2, 2, 3, 3, -1, -1, 0.5, 0.5;
    const auto [p, Y] = fit_pca_project(X, 1);
    CHECK(p.explained_variance(0) == doctest::Approx(p.total_variance).epsilon(1e-9));
    CHECK(p.components(0, 0) > 0);
    CHECK(std::abs(p.components(0, 0) - p.components(0, 1)) < 1e-12);
    CHECK(Y.cols() == 1);
}

TEST_CASE("full-rank PCA is an isometry")
{
    const Matrix X = random_matrix(30, 4, 7);
    const auto [p, Y] = fit_pca_project(X, 4);
    CHECK((p.components * p.components.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
    for (Eigen::Index i = 0; i < 30; ++i)
        for (Eigen::Index j = i + 1; j < 30; j += 3)
            CHECK(std::abs((X.row(i) - X.row(j)).norm() - (Y.row(i) - Y.row(j)).norm()) < 1e-8);
    for (Eigen::Index k = 1; k < 4; ++k)
        CHECK(p.explained_variance(k) <= p.explained_variance(k - 1));
}

TEST_CASE("PCA reconstruction error equals the dropped eigenvalues times n")
{
    const Matrix X = random_matrix(50, 5, 11);
    const auto [p, Y] = fit_pca_project(X, 2);
    const Matrix centered = X.rowwise() - p.column_means.transpose();
    const Matrix recon = Y * p.components;
    const double err = (centered - recon).squaredNorm();

    // Independent eigendecomposition of the population covariance.
    const Matrix cov = centered.transpose() * centered / 50.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    const double dropped = es.eigenvalues()(0) + es.eigenvalues()(1) + es.eigenvalues()(2);
    CHECK(std::abs(err - dropped * 50) < 1e-6);

    for (Eigen::Index k = 0; k < 2; ++k) {
        Eigen::Index arg;
        p.components.row(k).cwiseAbs().maxCoeff(&arg);
        CHECK(p.components(k, arg) > 0);
    }
}

TEST_CASE("PCA argument checks")
{
    const Matrix X = random_matrix(10, 3, 1);
    CHECK_THROWS_AS(fit_pca(X, 4), std::invalid_argument);
    CHECK_THROWS_AS(fit_pca(X, 0), std::invalid_argument);
    CHECK_THROWS_AS(fit_pca(random_matrix(2, 3, 1), 2), std::invalid_argument);
}

TEST_CASE("min-max scaling")
{
    Matrix X(3, 2);
    X << 0, 4, 5, 4, 10, 4;
    const auto p = fit_minmax(X, -1, 1);
    const Matrix Y = apply_minmax(p, X);
    CHECK(Y(0, 0) == -1.0);
    CHECK(Y(1, 0) == 0.0);
    CHECK(Y(2, 0) == 1.0);
    CHECK(Y(1, 1) == 0.0); // constant column -> midpoint
}
