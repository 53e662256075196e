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

#include "qmlbench/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace qmlbench::qkernel {

using qsim::Gate;

void FeatureMapSpec::validate() const
{
    if (dimension < 1 || dimension > qsim::kMaxQubits)
        throw std::invalid_argument("feature map dimension must be in [1, 24]");
    if (reps < 1)
        throw std::invalid_argument("feature map reps must be >= 1");
}

std::vector<Gate> feature_map_circuit(std::span<const double> x, const FeatureMapSpec& spec)
{
    spec.validate();
    if (x.size() != spec.dimension)
        throw std::invalid_argument("feature vector has " + std::to_string(x.size()) + " entries, feature map expects " +
                                    std::to_string(spec.dimension));
    const unsigned d = spec.dimension;
    std::vector<Gate> gates;
    gates.reserve(spec.reps * (2 * d + 3 * (d - 1)));
    for (unsigned r = 0; r < spec.reps; ++r) {
        for (unsigned q = 0; q < d; ++q)
            gates.push_back(Gate::h(q));
        for (unsigned q = 0; q < d; ++q)
            gates.push_back(Gate::p(q, 2.0 * x[q]));
        for (unsigned q = 0; q + 1 < d; ++q) {
            const double phi = (std::numbers::pi - x[q]) * (std::numbers::pi - x[q + 1]);
            gates.push_back(Gate::cx(q, q + 1));
            gates.push_back(Gate::p(q + 1, 2.0 * phi));
            gates.push_back(Gate::cx(q, q + 1));
        }
    }
    return gates;
}

qsim::Statevector encode_feature_map(std::span<const double> x, const FeatureMapSpec& spec)
{
    const auto gates = feature_map_circuit(x, spec);
    qsim::Statevector state(spec.dimension);
    state.apply(gates);
    return state;
}

namespace {

double estimate_from_shots(double p, const ShotOptions& shots)
{
    std::mt19937_64 engine(shots.seed);
    std::binomial_distribution<std::uint64_t> draw(shots.shots, std::clamp(p, 0.0, 1.0));
    return static_cast<double>(draw(engine)) / static_cast<double>(shots.shots);
}

std::span<const double> row_span(const Matrix& X, Eigen::Index i, std::vector<double>& buffer)
{
    buffer.resize(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index c = 0; c < X.cols(); ++c)
        buffer[static_cast<std::size_t>(c)] = X(i, c);
    return buffer;
}

} // namespace

double kernel_entry(std::span<const double> x, std::span<const double> y, const FeatureMapSpec& spec,
                    std::optional<ShotOptions> shots)
{
    if (x.size() != y.size())
        throw std::invalid_argument("kernel_entry: inputs have different dimensions");
    const auto phi_x = encode_feature_map(x, spec);
    const auto phi_y = encode_feature_map(y, spec);
    const double p = std::min(1.0, std::norm(qsim::inner_product(phi_y, phi_x)));
    if (!shots)
        return p;
    if (shots->shots == 0)
        throw std::invalid_argument("kernel_entry: shots must be >= 1");
    return estimate_from_shots(p, *shots);
}

Matrix kernel_matrix(const Matrix& X, const FeatureMapSpec& spec, std::optional<ShotOptions> shots, unsigned jobs)
{
    const Eigen::Index n = X.rows();
    if (n < 1)
        throw std::invalid_argument("kernel_matrix: need at least one row");
    if (X.cols() != static_cast<Eigen::Index>(spec.dimension))
        throw std::invalid_argument("kernel_matrix: column count does not match feature map dimension");

    Matrix K(n, n);
    parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t ui) {
        const auto i = static_cast<Eigen::Index>(ui);
        std::vector<double> bi, bj;
        const auto xi = row_span(X, i, bi);
        for (Eigen::Index j = i; j < n; ++j) {
            std::optional<ShotOptions> pair_shots;
            if (shots)
                pair_shots = ShotOptions{shots->shots, derive_seed(shots->seed, ui, static_cast<std::uint64_t>(j))};
            double v = kernel_entry(xi, row_span(X, j, bj), spec, pair_shots);
            if (i == j && !shots)
                v = 1.0;
            K(i, j) = v;
            K(j, i) = v;
        }
    });
    return K;
}

Matrix cross_kernel(const Matrix& A, const Matrix& B, const FeatureMapSpec& spec, std::optional<ShotOptions> shots,
                    unsigned jobs)
{
    if (A.cols() != B.cols())
        throw std::invalid_argument("cross_kernel: column counts differ");
    Matrix K(A.rows(), B.rows());
    parallel_for(static_cast<std::size_t>(A.rows()), jobs, [&](std::size_t ui) {
        const auto i = static_cast<Eigen::Index>(ui);
        std::vector<double> bi, bj;
        const auto ai = row_span(A, i, bi);
        for (Eigen::Index j = 0; j < B.rows(); ++j) {
            std::optional<ShotOptions> pair_shots;
            if (shots)
                pair_shots = ShotOptions{shots->shots, derive_seed(shots->seed ^ 0x5bd1e995ULL, ui, static_cast<std::uint64_t>(j))};
            K(i, j) = kernel_entry(ai, row_span(B, j, bj), spec, pair_shots);
        }
    });
    return K;
}

void write_kernel_csv(std::ostream& out, const Matrix& K)
{
    out << "n=" << K.rows() << '\n';
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
        for (Eigen::Index j = 0; j < K.cols(); ++j) {
            if (j)
                out << ',';
            out << K(i, j);
        }
        out << '\n';
    }
}

} // namespace qmlbench::qkernel
