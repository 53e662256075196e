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

#include "qmlbench/vqc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qmlbench/qsim/statevector.hpp"

namespace qmlbench::vqc {

using qsim::Gate;

namespace {

constexpr double kProbFloor = 1e-12;

std::vector<double> row_of(const Matrix& X, Eigen::Index i)
{
    std::vector<double> r(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index c = 0; c < X.cols(); ++c)
        r[static_cast<std::size_t>(c)] = X(i, c);
    return r;
}

void check_labels(std::span<const int> y)
{
    for (int v : y)
        if (v != 0 && v != 1)
            throw std::invalid_argument("VQC labels must be 0 or 1");
}

} // namespace

void VQCSpec::validate() const
{
    if (dimension < 1 || dimension > qsim::kMaxQubits)
        throw std::invalid_argument("VQC dimension must be in [1, 24]");
    if (feature_map.dimension != dimension)
        throw std::invalid_argument("VQC feature map dimension does not match VQC dimension");
    feature_map.validate();
    if (shots && *shots == 0)
        throw std::invalid_argument("VQC shots must be >= 1");
}

VQCSpec VQCSpec::for_dimension(unsigned d)
{
    VQCSpec spec;
    spec.dimension = d;
    spec.feature_map.dimension = d;
    return spec;
}

Probabilities vqc_forward(std::span<const double> x, const VQCParams& params, const VQCSpec& spec,
                          std::uint64_t shot_seed)
{
    spec.validate();
    const unsigned d = spec.dimension;
    if (params.theta.size() != spec.parameter_count())
        throw std::invalid_argument("VQC expects " + std::to_string(spec.parameter_count()) + " parameters, got " +
                                    std::to_string(params.theta.size()));

    qsim::Statevector state = qkernel::encode_feature_map(x, spec.feature_map);
    std::size_t t = 0;
    for (unsigned layer = 0; layer < spec.ansatz_depth; ++layer) {
        for (unsigned q = 0; q < d; ++q)
            state.apply(Gate::ry(q, params.theta[t++]));
        for (unsigned q = 0; q + 1 < d; ++q)
            state.apply(Gate::cx(q, q + 1));
    }
    for (unsigned q = 0; q < d; ++q)
        state.apply(Gate::ry(q, params.theta[t++]));

    double p1;
    if (spec.shots) {
        const auto counts = qsim::sample_counts(state, *spec.shots, shot_seed);
        std::uint64_t odd = 0;
        for (const auto& [bits, c] : counts)
            if (std::count(bits.begin(), bits.end(), '1') % 2 == 1)
                odd += c;
        p1 = static_cast<double>(odd) / static_cast<double>(*spec.shots);
    } else {
        p1 = std::clamp(state.odd_parity_probability(), 0.0, 1.0);
    }
    return {1.0 - p1, p1};
}

double vqc_loss(const VQCParams& params, const Matrix& X, std::span<const int> y, const VQCSpec& spec,
                std::uint64_t shot_seed, unsigned jobs)
{
    const auto n = static_cast<std::size_t>(X.rows());
    if (n == 0)
        throw std::invalid_argument("vqc_loss: empty batch");
    if (y.size() != n)
        throw std::invalid_argument("vqc_loss: label count does not match rows");
    check_labels(y);

    std::vector<double> terms(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        const auto x = row_of(X, static_cast<Eigen::Index>(i));
        const Probabilities p = vqc_forward(x, params, spec, derive_seed(shot_seed, i));
        const double py = std::clamp(y[i] == 1 ? p.p1 : p.p0, kProbFloor, 1.0 - kProbFloor);
        terms[i] = -std::log(py);
    });
    double sum = 0.0;
    for (double v : terms)
        sum += v;
    return sum / static_cast<double>(n);
}

std::vector<double> spsa_gradient(const std::function<double(std::span<const double>)>& f, std::span<const double> theta,
                                  double c, Rng& rng)
{
    const std::size_t p = theta.size();
    std::vector<double> delta(p), plus(p), minus(p);
    for (std::size_t i = 0; i < p; ++i) {
        delta[i] = rng.rademacher();
        plus[i] = theta[i] + c * delta[i];
        minus[i] = theta[i] - c * delta[i];
    }
    const double diff = (f(plus) - f(minus)) / (2.0 * c);
    std::vector<double> g(p);
    for (std::size_t i = 0; i < p; ++i)
        g[i] = diff / delta[i];
    return g;
}

VQCParams train_vqc(const Matrix& X, std::span<const int> y, const VQCSpec& spec, std::uint64_t seed,
                    TrainingTrace* trace, unsigned jobs)
{
    spec.validate();
    const auto n = static_cast<std::size_t>(X.rows());
    if (n < 2)
        throw std::invalid_argument("train_vqc: need at least two samples");
    if (y.size() != n)
        throw std::invalid_argument("train_vqc: label count does not match rows");
    check_labels(y);
    if (std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; }))
        throw std::invalid_argument("train_vqc: both classes must be present");
    if (X.cols() != static_cast<Eigen::Index>(spec.dimension))
        throw std::invalid_argument("train_vqc: column count does not match VQC dimension");

    Rng rng(seed);
    VQCParams current;
    current.theta.resize(spec.parameter_count());
    for (double& t : current.theta)
        t = rng.uniform(-std::numbers::pi, std::numbers::pi);

    std::uint64_t evaluation = 0;
    auto loss_at = [&](std::span<const double> theta) {
        VQCParams p{std::vector<double>(theta.begin(), theta.end())};
        return vqc_loss(p, X, y, spec, derive_seed(seed, 0xe7a1, evaluation++), jobs);
    };

    const auto& g = spec.gains;
    const double stability = g.stability_fraction * spec.max_iterations;

    VQCParams best = current;
    double best_loss = loss_at(current.theta);
    std::size_t best_iter = 0;
    TrainingTrace local;
    local.losses.push_back(best_loss);

    for (unsigned k = 0; k < spec.max_iterations; ++k) {
        const double ak = g.a / std::pow(k + 1 + stability, g.alpha);
        const double ck = g.c / std::pow(k + 1, g.gamma);
        const auto grad = spsa_gradient(loss_at, current.theta, ck, rng);
        for (std::size_t i = 0; i < grad.size(); ++i)
            current.theta[i] -= ak * grad[i];
        const double l = loss_at(current.theta);
        local.losses.push_back(l);
        if (l < best_loss) {
            best_loss = l;
            best = current;
            best_iter = k + 1;
        }
    }
    local.best_iteration = best_iter;
    if (trace)
        *trace = std::move(local);
    return best;
}

int label_from_probabilities(const Probabilities& p)
{
    if (std::abs(p.p0 - p.p1) < 1e-12)
        return 0;
    return p.p1 > p.p0 ? 1 : 0;
}

int predict_vqc(std::span<const double> x, const VQCParams& params, const VQCSpec& spec, std::uint64_t shot_seed)
{
    return label_from_probabilities(vqc_forward(x, params, spec, shot_seed));
}

} // namespace qmlbench::vqc
