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

// Variational quantum classifier: feature-map encoding, an RY + linear-CX
// ansatz, parity readout and SPSA training.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/qkernel.hpp"

namespace qmlbench::vqc {

struct SpsaGains {
    double a = 0.3;
    double c = 0.1;
    double alpha = 0.602;
    double gamma = 0.101;
    /// Stability constant A as a fraction of max_iterations.
    double stability_fraction = 0.1;
};

struct VQCSpec {
    unsigned dimension = 2;
    qkernel::FeatureMapSpec feature_map{2, 2, qkernel::Entanglement::Linear};
    unsigned ansatz_depth = 3;
    unsigned max_iterations = 200;
    SpsaGains gains{};
    /// When set, parity probabilities are estimated from sampled counts.
    std::optional<std::uint64_t> shots;

    std::size_t parameter_count() const { return static_cast<std::size_t>(dimension) * (ansatz_depth + 1); }
    void validate() const;

    static VQCSpec for_dimension(unsigned d);
};

struct VQCParams {
    std::vector<double> theta;
};

struct Probabilities {
    double p0;
    double p1;
};

/// `shot_seed` is only consulted when spec.shots is set.
Probabilities vqc_forward(std::span<const double> x, const VQCParams& params, const VQCSpec& spec,
                          std::uint64_t shot_seed = 0);

/// Mean cross-entropy of the parity readout, probabilities clamped to
/// [1e-12, 1 - 1e-12].
double vqc_loss(const VQCParams& params, const Matrix& X, std::span<const int> y, const VQCSpec& spec,
                std::uint64_t shot_seed = 0, unsigned jobs = 0);

/// Two-evaluation simultaneous-perturbation gradient estimate at theta with
/// perturbation size c and Rademacher directions drawn from rng.
std::vector<double> spsa_gradient(const std::function<double(std::span<const double>)>& f, std::span<const double> theta,
                                  double c, Rng& rng);

struct TrainingTrace {
    std::vector<double> losses; // loss of each recorded iterate, starting with theta_0
    std::size_t best_iteration = 0;
};

/// SPSA training. Returns the iterate with the lowest recorded loss.
VQCParams train_vqc(const Matrix& X, std::span<const int> y, const VQCSpec& spec, std::uint64_t seed,
                    TrainingTrace* trace = nullptr, unsigned jobs = 0);

/// Label with the larger parity probability; ties within 1e-12 go to 0.
int predict_vqc(std::span<const double> x, const VQCParams& params, const VQCSpec& spec, std::uint64_t shot_seed = 0);

int label_from_probabilities(const Probabilities& p);

} // namespace qmlbench::vqc
