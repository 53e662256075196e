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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmlbench {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when a classifier fails to reach its stopping criterion within
/// the iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed input files. The message carries the line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Combines a base seed with stream coordinates into an independent seed.
/// Used wherever work items need their own reproducible RNG stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Portable wrapper over mt19937_64. The standard distributions are
/// implementation-defined, so the conversions used here are spelled out.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n), unbiased. n must be positive.
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

    /// +1 or -1 with equal probability.
    double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

private:
    std::mt19937_64 engine_;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Output must only
/// depend on i, so the schedule never changes results.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Worker count used when a caller passes jobs = 0.
unsigned default_jobs();
void set_default_jobs(unsigned jobs);

} // namespace qmlbench
