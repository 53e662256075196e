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

// Declarative experiment matrices.
//
//   # comment
//   [defaults]
//   dataset = adhoc:circle
//
//   [experiment circle]
//   algorithm = svm-linear, svm-rbf, qsvm
//   state = 42, 12
//
// Every section other than [defaults] is an experiment; keys it does not set
// are inherited from [defaults]. Comma-separated values expand as a
// cartesian product, in key order of first appearance.

#include <iosfwd>
#include <string>
#include <vector>

#include "qmlbench/bench.hpp"

namespace qmlbench::cli {

struct ConfigEntry {
    std::string name;
    bench::ExperimentSpec spec;
};

struct RunConfig {
    std::vector<ConfigEntry> entries;
};

/// Parses and validates every expanded spec; nothing runs until this
/// returns. Errors cite `source:line`.
RunConfig parse_run_config(std::istream& in, const std::string& source = "config");
RunConfig load_run_config(const std::string& path);

/// Sets one field of `spec` from its textual form. Keys: dataset,
/// test_dataset, algorithm, backend, subsample, reduce, randomize (a:b:m or
/// "default"), prng_scale, scale, pca, feature_range (lo:hi), test_fraction,
/// state, C, gamma, reps, ansatz_depth, iterations, shots, seed,
/// max_quantum_dim.
void apply_setting(bench::ExperimentSpec& spec, const std::string& key, const std::string& value);

bool parse_bool(const std::string& value);

} // namespace qmlbench::cli
