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

#include "qmlbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qmlbench/preprocess.hpp"

namespace qmlbench::data {

AdhocShape parse_adhoc_shape(const std::string& name)
{
    if (name == "separable")
        return AdhocShape::Separable;
    if (name == "alternating")
        return AdhocShape::Alternating;
    if (name == "random")
        return AdhocShape::Random;
    if (name == "circle")
        return AdhocShape::Circle;
    throw std::invalid_argument("unknown ad-hoc shape '" + name + "'");
}

std::string adhoc_shape_name(AdhocShape shape)
{
    switch (shape) {
    case AdhocShape::Separable:
        return "separable";
    case AdhocShape::Alternating:
        return "alternating";
    case AdhocShape::Random:
        return "random";
    case AdhocShape::Circle:
        return "circle";
    }
    return "unknown";
}

Dataset gen_adhoc(AdhocShape shape, std::uint64_t seed)
{
    constexpr int kGrid = 20;
    Matrix X(kGrid * kGrid, 2);
    std::vector<int> labels;
    labels.reserve(kGrid * kGrid);
    Rng rng(seed);
    Eigen::Index row = 0;
    for (int x0 = 0; x0 < kGrid; ++x0)
        for (int x1 = 0; x1 < kGrid; ++x1, ++row) {
            X(row, 0) = x0;
            X(row, 1) = x1;
            int label = 0;
            switch (shape) {
            case AdhocShape::Separable:
                label = x0 + x1 >= kGrid ? 1 : 0;
                break;
            case AdhocShape::Alternating:
                label = (x0 + x1) % 2;
                break;
            case AdhocShape::Random:
                label = rng.bernoulli(0.5) ? 1 : 0;
                break;
            case AdhocShape::Circle: {
                const double dx = x0 - 9.5;
                const double dy = x1 - 9.5;
                label = dx * dx + dy * dy <= 36.0 ? 1 : 0;
                break;
            }
            }
            labels.push_back(label);
        }
    auto ds = Dataset::make("adhoc-" + adhoc_shape_name(shape), std::move(X), std::move(labels));
    if (shape == AdhocShape::Random)
        ds.metadata["seed"] = std::to_string(seed);
    return ds;
}

Split train_test_split(const Dataset& ds, double test_fraction, std::uint64_t state)
{
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("test fraction must be in (0, 1)");
    const std::size_t n = ds.size();
    if (n < 2)
        throw std::invalid_argument("train_test_split needs at least two rows");
    const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
    if (n_test == 0 || n_test == n)
        throw std::invalid_argument("train_test_split: a partition would be empty (n=" + std::to_string(n) +
                                    ", fraction " + std::to_string(test_fraction) + ")");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(state);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);

    Split out;
    out.test_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    out.test = ds.subset(out.test_indices);
    out.train = ds.subset(out.train_indices);
    return out;
}

Reduction reduce_near_hyperplane(const Dataset& ds, const svm::TrainedSVM& linear_model, double delta)
{
    if (linear_model.kernel.kind != svm::KernelKind::Linear || !linear_model.weights)
        throw std::invalid_argument("reduce_near_hyperplane needs a linear model");
    if (!(delta >= 0.0))
        throw std::invalid_argument("reduction distance must be >= 0");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (svm::hyperplane_distance(linear_model, ds.features.row(static_cast<Eigen::Index>(i)).transpose()) <= delta)
            keep.push_back(i);
    Reduction r;
    r.dataset = ds.subset(keep);
    r.kept = keep.size();
    r.dropped = ds.size() - keep.size();
    r.dataset.metadata["reduced_delta"] = format_number(delta);
    return r;
}

svm::TrainedSVM fit_reduction_hyperplane(const Dataset& ds, double C)
{
    const auto [scaler, Xs] = preprocess::fit_apply_scaler(ds.features);
    svm::SmoOptions opt;
    opt.C = C;
    svm::TrainedSVM model = svm::train_svm(Xs, ds.labels, svm::KernelSpec::linear(), opt);
    // w_s . (x - mu) / sigma + b  =  (w_s / sigma) . x + (b - sum w_s mu / sigma)
    const Vector w = model.weights->cwiseQuotient(scaler.stds);
    model.bias -= w.dot(scaler.means);
    model.weights = w;
    // The expansion over standardized support vectors no longer applies;
    // a single pseudo support vector w with coefficient 1 reproduces w.x + b.
    model.support_vectors = w.transpose();
    model.dual_coefs = Vector::Ones(1);
    model.support_indices.clear();
    return model;
}

Dataset take_per_class(const Dataset& ds, std::size_t per_class)
{
    std::map<int, std::size_t> taken;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (taken[ds.labels[i]]++ < per_class)
            keep.push_back(i);
    for (const auto& [label, count] : taken)
        if (count < per_class)
            throw std::invalid_argument("class " + std::to_string(label) + " has only " + std::to_string(count) +
                                        " rows, fewer than " + std::to_string(per_class));
    return ds.subset(keep);
}

} // namespace qmlbench::data
