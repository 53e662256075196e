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

#include "qmlbench/svm.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace qmlbench::svm {

KernelSpec KernelSpec::rbf(double gamma)
{
    if (!(std::isfinite(gamma) && gamma > 0.0))
        throw std::invalid_argument("RBF gamma must be finite and positive");
    return {KernelKind::RBF, gamma};
}

double KernelSpec::operator()(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) const
{
    switch (kind) {
    case KernelKind::Linear:
        return a.dot(b);
    case KernelKind::RBF:
        return std::exp(-gamma * (a - b).squaredNorm());
    case KernelKind::Precomputed:
        break;
    }
    throw std::logic_error("precomputed kernels cannot be evaluated from features");
}

std::string kernel_name(KernelKind kind)
{
    switch (kind) {
    case KernelKind::Linear:
        return "linear";
    case KernelKind::RBF:
        return "rbf";
    case KernelKind::Precomputed:
        return "precomputed";
    }
    return "unknown";
}

double default_gamma(const Matrix& X)
{
    if (X.size() == 0)
        throw std::invalid_argument("default_gamma: empty matrix");
    const double mean = X.mean();
    const double var = (X.array() - mean).square().mean();
    if (var <= 0.0)
        return 1.0;
    return 1.0 / (static_cast<double>(X.cols()) * var);
}

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kFullMatrixLimit = 6000;

/// Rows of Q_ij = y_i y_j K_ij, either fully materialized or computed on
/// demand with a bounded cache.
class QMatrix {
public:
    QMatrix(std::function<double(std::size_t, std::size_t)> kernel, std::span<const double> y)
        : kernel_(std::move(kernel)), y_(y.begin(), y.end()), n_(y.size())
    {
        diag_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            diag_[i] = kernel_(i, i);
        if (n_ <= kFullMatrixLimit) {
            full_.resize(n_ * n_);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i; j < n_; ++j) {
                    const double q = y_[i] * y_[j] * kernel_(i, j);
                    full_[i * n_ + j] = q;
                    full_[j * n_ + i] = q;
                }
        }
    }

    double diag(std::size_t i) const { return diag_[i]; }

    std::span<const double> row(std::size_t i)
    {
        if (!full_.empty())
            return {full_.data() + i * n_, n_};
        auto it = cache_.find(i);
        if (it == cache_.end()) {
            if (cache_.size() * n_ * sizeof(double) > (std::size_t{256} << 20))
                cache_.clear();
            std::vector<double> r(n_);
            for (std::size_t j = 0; j < n_; ++j)
                r[j] = y_[i] * y_[j] * kernel_(i, j);
            it = cache_.emplace(i, std::move(r)).first;
        }
        return it->second;
    }

private:
    std::function<double(std::size_t, std::size_t)> kernel_;
    std::vector<double> y_;
    std::size_t n_;
    std::vector<double> diag_;
    std::vector<double> full_;
    std::unordered_map<std::size_t, std::vector<double>> cache_;
};

struct BinaryLabels {
    std::array<int, 2> classes;
    std::vector<double> signs;
};

BinaryLabels binarize(std::span<const int> y)
{
    std::set<int> distinct(y.begin(), y.end());
    if (distinct.size() < 2)
        throw std::invalid_argument("SVM training needs two classes, got " + std::to_string(distinct.size()));
    if (distinct.size() > 2)
        throw std::invalid_argument("binary SVM got more than two classes; use one_vs_rest");
    BinaryLabels out{{*distinct.begin(), *distinct.rbegin()}, {}};
    out.signs.reserve(y.size());
    for (int v : y)
        out.signs.push_back(v == out.classes[1] ? 1.0 : -1.0);
    return out;
}

struct SmoResult {
    std::vector<double> alpha;
    double rho;
    std::size_t iterations;
    double objective;
};

SmoResult solve_smo(QMatrix& Q, std::span<const double> y, const SmoOptions& opt)
{
    const std::size_t n = y.size();
    const double C = opt.C;
    if (!(C > 0.0))
        throw std::invalid_argument("SVM C must be positive");
    const std::size_t max_iter = opt.max_iterations ? opt.max_iterations : std::size_t{10000} * n;

    std::vector<double> alpha(n, 0.0);
    std::vector<double> G(n, -1.0);

    auto in_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0); };
    auto in_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < C); };

    std::size_t iter = 0;
    for (;; ++iter) {
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * G[t];
            if (in_up(t) && v > m_up) {
                m_up = v;
                i = t;
            }
            if (in_low(t) && v < m_low) {
                m_low = v;
                j = t;
            }
        }
        if (i == n || j == n || m_up - m_low < opt.tol)
            break;
        if (iter >= max_iter)
            throw ConvergenceError("SMO did not converge within " + std::to_string(max_iter) +
                                   " iterations (max KKT violation " + std::to_string(m_up - m_low) + ")");

        const auto Qi = Q.row(i);
        const auto Qj = Q.row(j);
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];

        if (y[i] != y[j]) {
            double quad = Q.diag(i) + Q.diag(j) + 2.0 * Qi[j];
            if (quad <= 0)
                quad = kTau;
            const double delta = (-G[i] - G[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) {
                    alpha[j] = 0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = -diff;
            }
            if (diff > 0) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = C - diff;
                }
            } else if (alpha[j] > C) {
                alpha[j] = C;
                alpha[i] = C + diff;
            }
        } else {
            double quad = Q.diag(i) + Q.diag(j) - 2.0 * Qi[j];
            if (quad <= 0)
                quad = kTau;
            const double delta = (G[i] - G[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) {
                    alpha[i] = C;
                    alpha[j] = sum - C;
                }
            } else if (alpha[j] < 0) {
                alpha[j] = 0;
                alpha[i] = sum;
            }
            if (sum > C) {
                if (alpha[j] > C) {
                    alpha[j] = C;
                    alpha[i] = sum - C;
                }
            } else if (alpha[i] < 0) {
                alpha[i] = 0;
                alpha[j] = sum;
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t)
            G[t] += Qi[t] * dai + Qj[t] * daj;
    }

    // rho from free vectors, or the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * G[t];
        if (alpha[t] >= C) {
            if (y[t] < 0)
                ub = std::min(ub, yg);
            else
                lb = std::max(lb, yg);
        } else if (alpha[t] <= 0) {
            if (y[t] > 0)
                ub = std::min(ub, yg);
            else
                lb = std::max(lb, yg);
        } else {
            ++n_free;
            free_sum += yg;
        }
    }
    const double rho = n_free > 0 ? free_sum / static_cast<double>(n_free) : (ub + lb) / 2.0;

    double objective = 0.0;
    for (std::size_t t = 0; t < n; ++t)
        objective += alpha[t] * (G[t] - 1.0);
    objective /= 2.0;

    return {std::move(alpha), rho, iter, objective};
}

TrainedSVM assemble(const SmoResult& r, const BinaryLabels& labels, const KernelSpec& kernel, double C,
                    const Matrix* X)
{
    TrainedSVM model;
    model.kernel = kernel;
    model.C = C;
    model.classes = labels.classes;
    model.bias = -r.rho;
    model.iterations = r.iterations;
    model.objective = r.objective;
    const std::size_t n = r.alpha.size();
    model.alphas = Vector::Map(r.alpha.data(), static_cast<Eigen::Index>(n));
    for (std::size_t t = 0; t < n; ++t)
        if (r.alpha[t] > 1e-12)
            model.support_indices.push_back(t);

    const auto ns = static_cast<Eigen::Index>(model.support_indices.size());
    model.dual_coefs.resize(ns);
    for (Eigen::Index s = 0; s < ns; ++s) {
        const std::size_t t = model.support_indices[static_cast<std::size_t>(s)];
        model.dual_coefs(s) = r.alpha[t] * labels.signs[t];
    }
    if (X) {
        model.support_vectors.resize(ns, X->cols());
        for (Eigen::Index s = 0; s < ns; ++s)
            model.support_vectors.row(s) = X->row(static_cast<Eigen::Index>(model.support_indices[static_cast<std::size_t>(s)]));
        if (kernel.kind == KernelKind::Linear)
            model.weights = model.support_vectors.transpose() * model.dual_coefs;
    }
    return model;
}

int label_for(const TrainedSVM& model, double decision)
{
    return decision >= 0.0 ? model.classes[1] : model.classes[0];
}

} // namespace

TrainedSVM train_svm(const Matrix& X, std::span<const int> y, const KernelSpec& kernel, const SmoOptions& options)
{
    if (kernel.kind == KernelKind::Precomputed)
        throw std::invalid_argument("train_svm: use train_svm_precomputed for precomputed kernels");
    if (static_cast<std::size_t>(X.rows()) != y.size())
        throw std::invalid_argument("train_svm: label count does not match rows");
    if (kernel.kind == KernelKind::RBF)
        (void)KernelSpec::rbf(kernel.gamma);
    const BinaryLabels labels = binarize(y);

    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = X;
    QMatrix Q([&](std::size_t i, std::size_t j) {
        return kernel(rows.row(static_cast<Eigen::Index>(i)).transpose(), rows.row(static_cast<Eigen::Index>(j)).transpose());
    }, labels.signs);
    const SmoResult r = solve_smo(Q, labels.signs, options);
    return assemble(r, labels, kernel, options.C, &X);
}

TrainedSVM train_svm_precomputed(const Matrix& K, std::span<const int> y, const SmoOptions& options)
{
    if (K.rows() != K.cols())
        throw std::invalid_argument("precomputed kernel must be square");
    if (static_cast<std::size_t>(K.rows()) != y.size())
        throw std::invalid_argument("precomputed kernel size does not match label count");
    if (!K.isApprox(K.transpose(), 1e-10) && (K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("precomputed kernel is not symmetric");
    const BinaryLabels labels = binarize(y);

    Matrix Kuse = K;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(K);
    if (eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() < -1e-6) {
        std::cerr << "warning: precomputed kernel has eigenvalue " << eig.eigenvalues().minCoeff()
                  << " < -1e-6; clipping negative eigenvalues to 0\n";
        const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
        Kuse = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    }

    QMatrix Q([&](std::size_t i, std::size_t j) {
        return Kuse(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }, labels.signs);
    const SmoResult r = solve_smo(Q, labels.signs, options);
    return assemble(r, labels, KernelSpec::precomputed(), options.C, nullptr);
}

Prediction predict_svm(const TrainedSVM& model, const Eigen::Ref<const Vector>& x)
{
    if (model.kernel.kind == KernelKind::Precomputed)
        throw std::invalid_argument("predict_svm: precomputed models need a kernel row");
    if (model.support_vectors.rows() > 0 && x.size() != model.support_vectors.cols())
        throw std::invalid_argument("predict_svm: feature dimension mismatch");
    double f = model.bias;
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s)
        f += model.dual_coefs(s) * model.kernel(model.support_vectors.row(s).transpose(), x);
    return {label_for(model, f), f};
}

Prediction predict_svm_precomputed(const TrainedSVM& model, std::span<const double> kernel_row)
{
    if (kernel_row.size() != static_cast<std::size_t>(model.dual_coefs.size()))
        throw std::invalid_argument("predict_svm_precomputed: kernel row length does not match support vector count");
    double f = model.bias;
    for (std::size_t s = 0; s < kernel_row.size(); ++s)
        f += model.dual_coefs(static_cast<Eigen::Index>(s)) * kernel_row[s];
    return {label_for(model, f), f};
}

std::vector<int> predict_svm_rows(const TrainedSVM& model, const Matrix& X)
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        out.push_back(predict_svm(model, X.row(i).transpose()).label);
    return out;
}

double hyperplane_distance(const TrainedSVM& model, const Eigen::Ref<const Vector>& x)
{
    if (model.kernel.kind != KernelKind::Linear || !model.weights)
        throw std::invalid_argument("hyperplane_distance needs a linear model");
    const double norm = model.weights->norm();
    if (!(norm > 0.0))
        throw std::invalid_argument("hyperplane_distance: weight vector is zero");
    if (x.size() != model.weights->size())
        throw std::invalid_argument("hyperplane_distance: feature dimension mismatch");
    return std::abs(model.weights->dot(x) + model.bias) / norm;
}

MulticlassSVM one_vs_rest(const Matrix& X, std::span<const int> y, const KernelSpec& kernel, const SmoOptions& options)
{
    std::set<int> distinct(y.begin(), y.end());
    if (distinct.size() < 2)
        throw std::invalid_argument("one_vs_rest needs at least two classes");
    MulticlassSVM out;
    out.classes.assign(distinct.begin(), distinct.end());
    if (out.classes.size() == 2) {
        // Two classes reduce to one binary model.
        out.models.push_back(train_svm(X, y, kernel, options));
        return out;
    }
    std::vector<int> binary(y.size());
    for (int c : out.classes) {
        for (std::size_t i = 0; i < y.size(); ++i)
            binary[i] = y[i] == c ? 1 : 0;
        out.models.push_back(train_svm(X, binary, kernel, options));
    }
    return out;
}

int predict_multiclass(const MulticlassSVM& model, const Eigen::Ref<const Vector>& x)
{
    if (model.classes.size() == 2 && model.models.size() == 1)
        return predict_svm(model.models.front(), x).label;
    if (model.classes.size() != model.models.size())
        throw std::invalid_argument("predict_multiclass: one model per class expected");
    int best = model.classes.front();
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.models.size(); ++c) {
        const double v = predict_svm(model.models[c], x).decision_value;
        if (v > best_value || (v == best_value && model.classes[c] < best)) {
            best_value = v;
            best = model.classes[c];
        }
    }
    return best;
}

} // namespace qmlbench::svm
