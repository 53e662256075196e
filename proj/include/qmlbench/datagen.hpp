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

#include <cstdint>
#include <string>
#include <utility>

#include "qmlbench/dataset.hpp"
#include "qmlbench/svm.hpp"

namespace qmlbench::data {

enum class AdhocShape { Separable, Alternating, Random, Circle };

AdhocShape parse_adhoc_shape(const std::string& name);
std::string adhoc_shape_name(AdhocShape shape);

/// 400 points on the integer grid {0..19}^2.
///   separable:   1 iff x0 + x1 >= 20
///   alternating: (x0 + x1) mod 2
///   random:      Bernoulli(0.5) from seed
///   circle:      1 iff (x0 - 9.5)^2 + (x1 - 9.5)^2 <= 36
Dataset gen_adhoc(AdhocShape shape, std::uint64_t seed = 0);

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// Seeded Fisher-Yates shuffle; the first round(n * test_fraction) shuffled
/// rows become the test set.
Split train_test_split(const Dataset& ds, double test_fraction = 0.33, std::uint64_t state = 42);

struct Reduction {
    Dataset dataset;
    std::size_t kept = 0;
    std::size_t dropped = 0;
};

/// Keeps rows within distance delta of the model's hyperplane, in order.
Reduction reduce_near_hyperplane(const Dataset& ds, const svm::TrainedSVM& linear_model, double delta);

/// Linear SVM hyperplane for reduction, fitted on standardized features and
/// mapped back to raw coordinates so distances stay in data units.
svm::TrainedSVM fit_reduction_hyperplane(const Dataset& ds, double C = 1.0);

/// The first `per_class` rows of each class, in file order.
Dataset take_per_class(const Dataset& ds, std::size_t per_class);

} // namespace qmlbench::data
