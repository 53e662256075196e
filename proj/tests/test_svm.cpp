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
#include <iostream>
#include <sstream>

#include "oracles/dual_qp.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/serialize.hpp"
#include "qmlbench/svm.hpp"

using namespace qmlbench;
using namespace qmlbench::svm;

namespace {

Matrix two_points()
{
    Matrix X(2, 2);
    X << 0, 0, 2, 2;
    return X;
}

struct Blobs {
    Matrix X;
    std::vector<int> y;
};

Blobs blobs(const std::vector<std::pair<double, double>>& centers, int per, double spread, std::uint64_t seed)
{
    Rng rng(seed);
    Blobs b;
    b.X.resize(static_cast<Eigen::Index>(centers.size()) * per, 2);
    Eigen::Index r = 0;
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (int i = 0; i < per; ++i, ++r) {
            b.X(r, 0) = centers[c].first + rng.uniform(-spread, spread);
            b.X(r, 1) = centers[c].second + rng.uniform(-spread, spread);
            b.y.push_back(static_cast<int>(c));
        }
    return b;
}

Matrix gram(const Matrix& X, const KernelSpec& k)
{
    Matrix K(X.rows(), X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.rows(); ++j)
            K(i, j) = k(X.row(i).transpose(), X.row(j).transpose());
    return K;
}

double decision_at(const TrainedSVM& m, const Matrix& K, Eigen::Index i)
{
    double f = m.bias;
    for (std::size_t s = 0; s < m.support_indices.size(); ++s)
        f += m.dual_coefs(static_cast<Eigen::Index>(s)) * K(static_cast<Eigen::Index>(m.support_indices[s]), i);
    return f;
}

} // namespace

TEST_CASE("kernel specs")
{
    CHECK_THROWS_AS(KernelSpec::rbf(0.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::rbf(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::rbf(std::nan("")), std::invalid_argument);
    const auto k = KernelSpec::rbf(0.5);
    Vector a(2), b(2), c(2);
    a << 0, 0;
    b << 1, 0;
    c << 2, 0;
    CHECK(k(a, a) == 1.0);
    CHECK(k(a, b) > k(a, c));
    CHECK(k(a, b) == doctest::Approx(std::exp(-0.5)));
    Matrix X(2, 2);
    X << 1, 2, 3, 4;
    // Var over {1,2,3,4} = 1.25, d = 2.
    CHECK(default_gamma(X) == doctest::Approx(1.0 / 2.5));
    CHECK(default_gamma(Matrix::Constant(3, 2, 7.0)) == 1.0);
}

TEST_CASE("two-point maximum margin")
{
    const auto m = train_svm(two_points(), std::vector<int>{0, 1}, KernelSpec::linear());
    REQUIRE(m.weights);
    CHECK((*m.weights)(0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK((*m.weights)(1) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(m.bias == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(m.support_indices.size() == 2);
    CHECK(m.alphas(0) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(m.alphas(1) == doctest::Approx(0.25).epsilon(1e-6));

    Vector mid(2), far(2);
    mid << 1, 1;
    far << 2, 2;
    const auto p = predict_svm(m, mid);
    CHECK(std::abs(p.decision_value) < 1e-9);
    CHECK(p.label == 1);
    CHECK(hyperplane_distance(m, mid) < 1e-9);
    CHECK(hyperplane_distance(m, far) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    auto scaled = m;
    *scaled.weights *= 3.7;
    scaled.bias *= 3.7;
    CHECK(hyperplane_distance(scaled, far) == doctest::Approx(hyperplane_distance(m, far)).epsilon(1e-12));
}

TEST_CASE("labels map to the caller's classes")
{
    const auto m = train_svm(two_points(), std::vector<int>{5, 9}, KernelSpec::linear());
    CHECK(m.classes[0] == 5);
    CHECK(m.classes[1] == 9);
    const auto rows = predict_svm_rows(m, two_points());
    CHECK(rows == std::vector<int>{5, 9});
}

TEST_CASE("training errors")
{
    CHECK_THROWS_AS(train_svm(two_points(), std::vector<int>{1, 1}, KernelSpec::linear()), std::invalid_argument);
    Matrix X3(3, 1);
    X3 << 0, 1, 2;
    CHECK_THROWS_AS(train_svm(X3, std::vector<int>{0, 1, 2}, KernelSpec::linear()), std::invalid_argument);
    SmoOptions bad;
    bad.C = 0;
    CHECK_THROWS_AS(train_svm(two_points(), std::vector<int>{0, 1}, KernelSpec::linear(), bad),
                    std::invalid_argument);
    Matrix asym(2, 2);
    asym << 1, 0.5, 0.2, 1;
    CHECK_THROWS_AS(train_svm_precomputed(asym, std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("SMO objective matches the projected-gradient dual oracle")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        Matrix X(12, 2);
        std::vector<int> y, ypm;
        for (int i = 0; i < 12; ++i) {
            X(i, 0) = rng.uniform(-2, 2);
            X(i, 1) = rng.uniform(-2, 2);
            const int label = X(i, 0) + 0.5 * X(i, 1) + rng.uniform(-1, 1) > 0 ? 1 : 0;
            y.push_back(label);
            ypm.push_back(label ? 1 : -1);
        }
        if (std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; }))
            continue;
        const auto k = KernelSpec::rbf(0.5);
        const auto m = train_svm(X, y, k);
        const auto ref = oracle::solve_dual(gram(X, k), ypm, 1.0);
        CHECK(m.objective == doctest::Approx(ref.objective).epsilon(1e-4));
        CHECK(std::abs(m.objective - ref.objective) < 1e-4);

        const auto lin = train_svm(X, y, KernelSpec::linear());
        const auto lref = oracle::solve_dual(gram(X, KernelSpec::linear()), ypm, 1.0);
        CHECK(std::abs(lin.objective - lref.objective) < 1e-4);
    }
}

TEST_CASE("KKT conditions and dual feasibility")
{
    auto b = blobs({{0, 0}, {1.5, 1.5}}, 30, 1.2, 9);
    const double C = 1.0, tol = 1e-3;
    const auto k = KernelSpec::rbf(0.7);
    const auto m = train_svm(b.X, b.y, k);
    const Matrix K = gram(b.X, k);
    double sum = 0;
    for (Eigen::Index i = 0; i < b.X.rows(); ++i) {
        const double a = m.alphas(i);
        const double yi = b.y[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
        sum += a * yi;
        CHECK(a >= 0.0);
        CHECK(a <= C);
        const double margin = yi * decision_at(m, K, i);
        if (a < 1e-12)
            CHECK(margin >= 1 - tol);
        else if (a < C - 1e-12)
            CHECK(std::abs(margin - 1) <= tol);
        else
            CHECK(margin <= 1 + tol);
    }
    CHECK(std::abs(sum) < 1e-8);
    for (std::size_t s = 0; s < m.support_indices.size(); ++s)
        CHECK(m.alphas(static_cast<Eigen::Index>(m.support_indices[s])) > 1e-12);
}

TEST_CASE("separable problem puts free support vectors on the margin")
{
    auto b = blobs({{0, 0}, {4, 4}}, 20, 1.0, 3);
    SmoOptions hard;
    hard.C = 1e3;
    const auto m = train_svm(b.X, b.y, KernelSpec::linear(), hard);
    for (std::size_t s = 0; s < m.support_indices.size(); ++s) {
        const double f = predict_svm(m, b.X.row(static_cast<Eigen::Index>(m.support_indices[s])).transpose())
                             .decision_value;
        CHECK(std::abs(std::abs(f) - 1.0) < 1e-3);
    }
}

TEST_CASE("prediction equals the recomputed kernel expansion")
{
    auto b = blobs({{0, 0}, {1, 1}}, 25, 1.5, 12);
    const auto k = KernelSpec::rbf(1.3);
    const auto m = train_svm(b.X, b.y, k);
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
        Vector x(2);
        x << rng.uniform(-2, 3), rng.uniform(-2, 3);
        double f = m.bias;
        for (Eigen::Index s = 0; s < m.support_vectors.rows(); ++s)
            f += m.dual_coefs(s) * k(x, m.support_vectors.row(s).transpose());
        CHECK(std::abs(predict_svm(m, x).decision_value - f) < 1e-10);
    }
}

TEST_CASE("precomputed kernels reproduce feature-space training")
{
    auto b = blobs({{0, 0}, {1, 1}}, 20, 1.2, 5);
    const auto k = KernelSpec::rbf(0.9);
    const auto direct = train_svm(b.X, b.y, k);
    const auto pre = train_svm_precomputed(gram(b.X, k), b.y);
    CHECK(pre.objective == doctest::Approx(direct.objective).epsilon(1e-9));
    CHECK(pre.bias == doctest::Approx(direct.bias).epsilon(1e-9));
    CHECK(pre.kernel.kind == KernelKind::Precomputed);
    Vector x(2);
    x << 0.4, 0.6;
    std::vector<double> row;
    for (auto i : pre.support_indices)
        row.push_back(k(x, b.X.row(static_cast<Eigen::Index>(i)).transpose()));
    CHECK(predict_svm_precomputed(pre, row).decision_value ==
          doctest::Approx(predict_svm(direct, x).decision_value).epsilon(1e-9));
    CHECK_THROWS_AS(predict_svm_precomputed(pre, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("indefinite precomputed kernel is clipped with a warning")
{
    Matrix K(3, 3);
    K << 1, 0.9, -0.9, 0.9, 1, 0.9, -0.9, 0.9, 1; // has a negative eigenvalue
    std::ostringstream err;
    auto* old = std::cerr.rdbuf(err.rdbuf());
    const auto m = train_svm_precomputed(K, std::vector<int>{0, 1, 0});
    std::cerr.rdbuf(old);
    CHECK(err.str().find("warning") != std::string::npos);
    CHECK(std::isfinite(m.bias));
}

TEST_CASE("one-vs-rest")
{
    auto three = blobs({{0, 0}, {6, 0}, {0, 6}}, 15, 1.0, 8);
    const auto mc = one_vs_rest(three.X, three.y, KernelSpec::linear());
    CHECK(mc.models.size() == 3);
    int hit = 0;
    for (Eigen::Index i = 0; i < three.X.rows(); ++i)
        hit += predict_multiclass(mc, three.X.row(i).transpose()) == three.y[static_cast<std::size_t>(i)];
    CHECK(hit == three.X.rows());

    auto dup = mc;
    dup.classes.push_back(mc.classes[1]);
    dup.models.push_back(mc.models[1]);
    for (Eigen::Index i = 0; i < three.X.rows(); ++i)
        CHECK(predict_multiclass(dup, three.X.row(i).transpose()) ==
              predict_multiclass(mc, three.X.row(i).transpose()));

    auto two = blobs({{0, 0}, {1, 1}}, 20, 1.0, 2);
    const auto bin = train_svm(two.X, two.y, KernelSpec::rbf(1.0));
    const auto ovr = one_vs_rest(two.X, two.y, KernelSpec::rbf(1.0));
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        Vector x(2);
        x << rng.uniform(-1, 2), rng.uniform(-1, 2);
        CHECK(predict_multiclass(ovr, x) == predict_svm(bin, x).label);
    }
    CHECK_THROWS_AS(one_vs_rest(two.X, std::vector<int>(40, 1), KernelSpec::linear()), std::invalid_argument);
}

TEST_CASE("standardized training is invariant to affine pre-shifts")
{
    auto b = blobs({{0, 0}, {1.2, 0.8}}, 30, 1.0, 14);
    auto standardize = [](const Matrix& X) {
        Matrix Z = X.rowwise() - X.colwise().mean();
        const Vector sd = (Z.array().square().colwise().mean()).sqrt().transpose();
        return Matrix(Z * sd.cwiseInverse().asDiagonal());
    };
    Matrix shifted = b.X;
    shifted.col(0).array() += 100.0;
    shifted.col(1).array() -= 37.5;
    const auto m1 = train_svm(standardize(b.X), b.y, KernelSpec::rbf(0.5));
    const auto m2 = train_svm(standardize(shifted), b.y, KernelSpec::rbf(0.5));
    CHECK(predict_svm_rows(m1, standardize(b.X)) == predict_svm_rows(m2, standardize(shifted)));
}

TEST_CASE("model JSON round trip")
{
    auto b = blobs({{0, 0}, {2, 2}}, 10, 1.0, 4);
    const auto m = train_svm(b.X, b.y, KernelSpec::linear());
    const auto back = serialize::svm_model_from_json(serialize::svm_model_to_json(m));
    CHECK(back.bias == m.bias);
    CHECK(back.dual_coefs == m.dual_coefs);
    CHECK(back.support_vectors == m.support_vectors);
    REQUIRE(back.weights);
    CHECK(*back.weights == *m.weights);
    Vector x(2);
    x << 0.3, 1.9;
    CHECK(predict_svm(back, x).decision_value == predict_svm(m, x).decision_value);
}
