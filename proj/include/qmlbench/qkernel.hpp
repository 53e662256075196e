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

// Second-order Pauli-Z evolution feature map (linear entanglement) and the
// fidelity kernel k(x, y) = |<phi(y)|phi(x)>|^2 built on it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/qsim/statevector.hpp"

namespace qmlbench::qkernel {

enum class Entanglement { Linear };

struct FeatureMapSpec {
    unsigned dimension = 2;
    unsigned reps = 2;
    Entanglement entanglement = Entanglement::Linear;

    void validate() const;
};

/// Gate list for one input. Each repetition is H on every qubit, P(2 x_i)
/// on qubit i, then CX(i, i+1) P(2 (pi - x_i)(pi - x_{i+1})) CX(i, i+1)
/// for each adjacent pair.
std::vector<qsim::Gate> feature_map_circuit(std::span<const double> x, const FeatureMapSpec& spec);

qsim::Statevector encode_feature_map(std::span<const double> x, const FeatureMapSpec& spec);

/// Shot mode replaces the exact fidelity p with (Binomial(shots, p) / shots),
/// the estimator obtained by counting all-zero outcomes of the
/// compute-uncompute circuit.
struct ShotOptions {
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
};

double kernel_entry(std::span<const double> x, std::span<const double> y, const FeatureMapSpec& spec,
                    std::optional<ShotOptions> shots = std::nullopt);

/// Symmetric n x n kernel matrix. Every (i <= j) entry is evaluated with a
/// fresh kernel_entry call, mirroring the per-pair circuit execution of a
/// hardware kernel estimate. In shot mode each pair draws from its own
/// stream derived from (seed, i, j).
Matrix kernel_matrix(const Matrix& X, const FeatureMapSpec& spec, std::optional<ShotOptions> shots = std::nullopt,
                     unsigned jobs = 0);

/// Rectangular cross-kernel K[i][j] = k(A_i, B_j), used for prediction.
Matrix cross_kernel(const Matrix& A, const Matrix& B, const FeatureMapSpec& spec,
                    std::optional<ShotOptions> shots = std::nullopt, unsigned jobs = 0);

/// Writes `n=<n>` then one comma-separated row per line.
void write_kernel_csv(std::ostream& out, const Matrix& K);

} // namespace qmlbench::qkernel
