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

// Soft-margin kernel SVM trained with SMO (maximal-violating-pair working
// set), plus one-vs-rest multiclass and linear hyperplane geometry.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::svm {

enum class KernelKind { Linear, RBF, Precomputed };

struct KernelSpec {
    KernelKind kind = KernelKind::Linear;
    double gamma = 0.0; // RBF only

    static KernelSpec linear() { return {KernelKind::Linear, 0.0}; }
    static KernelSpec rbf(double gamma);
    static KernelSpec precomputed() { return {KernelKind::Precomputed, 0.0}; }

    /// Evaluates the kernel between two points; not valid for Precomputed.
    double operator()(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const;
};

std::string kernel_name(KernelKind kind);

/// 1 / (d * Var(X)) over all entries of X; 1 when X is constant.
double default_gamma(const Matrix& X);

struct SmoOptions {
    double C = 1.0;
    double tol = 1e-3;
    /// 0 selects 10^4 passes over the training set.
    std::size_t max_iterations = 0;
};

struct TrainedSVM {
    KernelSpec kernel;
    /// Rows are support vectors; empty for precomputed kernels.
    Matrix support_vectors;
    /// Positions of the support vectors in the training set.
    std::vector<std::size_t> support_indices;
    /// alpha_i * y_i for each support vector, y in {-1, +1}.
    Vector dual_coefs;
    double bias = 0.0;
    double C = 1.0;
    /// {negative class, positive class} in the caller's label space.
    std::array<int, 2> classes{0, 1};
    /// Linear kernel only: w = sum alpha_i y_i x_i.
    std::optional<Vector> weights;

    std::size_t iterations = 0;
    /// Dual objective 1/2 a'Qa - sum(a) at the solution.
    double objective = 0.0;
    /// Full dual vector over the training set (0 for non-support points).
    Vector alphas;
};

struct Prediction {
    int label;
    double decision_value;
};

/// Trains on feature rows. `y` must contain exactly two distinct labels;
/// the larger one is the positive class.
TrainedSVM train_svm(const Matrix& X, std::span<const int> y, const KernelSpec& kernel, const SmoOptions& options = {});

/// Trains on a precomputed Gram matrix. Eigenvalues below -1e-6 trigger a
/// warning and are clipped to zero before training.
TrainedSVM train_svm_precomputed(const Matrix& K, std::span<const int> y, const SmoOptions& options = {});

Prediction predict_svm(const TrainedSVM& model, const Eigen::Ref<const Vector>& x);

/// `kernel_row[s]` is k(x, support vector s), in support_indices order.
Prediction predict_svm_precomputed(const TrainedSVM& model, std::span<const double> kernel_row);

std::vector<int> predict_svm_rows(const TrainedSVM& model, const Matrix& X);

/// |w.x + b| / ||w|| for a linear model.
double hyperplane_distance(const TrainedSVM& model, const Eigen::Ref<const Vector>& x);

/// models[k] scores classes[k] against the rest. With exactly two classes a
/// single binary model is stored and used directly.
struct MulticlassSVM {
    std::vector<int> classes;
    std::vector<TrainedSVM> models;
};

MulticlassSVM one_vs_rest(const Matrix& X, std::span<const int> y, const KernelSpec& kernel,
                          const SmoOptions& options = {});

/// Argmax of per-class decision values; ties go to the lowest class id.
int predict_multiclass(const MulticlassSVM& model, const Eigen::Ref<const Vector>& x);

} // namespace qmlbench::svm
