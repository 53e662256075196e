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

// Invertible affine scrambling of feature values:
//   forward(x) = 1 + (a x + b) mod m
//   inverse(y) = a^-1 (y - 1 - b) mod m
// with a < m prime and m larger than every (quantized) value.

#include <cstdint>

#include "qmlbench/dataset.hpp"

namespace qmlbench::data {

bool is_prime(std::int64_t n);

/// a^-1 mod m by scanning 1..m-1, as in the original procedure.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

struct PRNGParams {
    std::int64_t a = 7919;
    std::int64_t b = 13;
    std::int64_t m = 104729;
    std::int64_t a_inv = 0;

    /// Validates primality and a < m, then computes a_inv.
    static PRNGParams make(std::int64_t a, std::int64_t b, std::int64_t m);

    std::int64_t forward(std::int64_t x) const;
    std::int64_t inverse(std::int64_t y) const;
};

enum class PrngDirection { Forward, Inverse };

/// Maps every feature v -> round(v k), applies forward or inverse, divides
/// by k. Labels are untouched. `scale` must be a power of ten.
Dataset prng_apply(const Dataset& ds, const PRNGParams& params, PrngDirection direction, std::int64_t scale = 1);

} // namespace qmlbench::data
