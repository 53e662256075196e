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

// Experiment harness: preprocessing pipeline, classifier runs, accuracy
// reports, the split-volatility matrix and runtime scaling fits.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmlbench/dataset.hpp"
#include "qmlbench/prng.hpp"

namespace qmlbench::bench {

enum class Algorithm { SvmLinear, SvmRbf, Qsvm, Vqc };
enum class Backend { Local, ExactSim, ShotSim };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);
Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);
bool is_quantum(Algorithm a);
/// exact-sim for quantum algorithms, local otherwise.
Backend default_backend(Algorithm a);

struct ExperimentSpec {
    Algorithm algorithm = Algorithm::SvmLinear;
    Backend backend = Backend::Local;
    /// Dataset reference, see load_dataset_ref.
    std::string dataset;
    /// When set, the whole of `dataset` trains and this one is the test set.
    std::optional<std::string> test_dataset;

    /// Keep only the first N rows of each class, in file order.
    std::optional<std::size_t> subsample_per_class;
    std::optional<double> reduce_delta;
    std::optional<data::PRNGParams> randomize;
    std::int64_t prng_scale = 1;
    bool scale = false;
    std::optional<unsigned> pca_dim;
    /// Quantum inputs are min-max mapped onto this range.
    std::pair<double, double> feature_range{-1.0, 1.0};

    double test_fraction = 0.33;
    std::uint64_t state = 42;

    double C = 1.0;
    /// RBF width; unset selects 1 / (d Var(X)) on the training features.
    std::optional<double> gamma;
    unsigned reps = 2;
    unsigned ansatz_depth = 3;
    unsigned vqc_iterations = 200;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    /// Largest feature dimension accepted for quantum algorithms.
    unsigned max_quantum_dim = 24;

    /// Checks everything that does not need the data.
    void validate() const;
};

struct ExperimentReport {
    ExperimentSpec spec;
    double wall_time_seconds = 0.0;
    double accuracy_percent = 0.0;
    bool one_class = false;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::string predictions_path;

    // Not serialized; the persisted predictions file carries them.
    std::vector<int> truth;
    std::vector<int> predictions;
};

struct RunOptions {
    unsigned jobs = 0;
    /// Directory used to resolve dataset references.
    std::string data_dir;
    /// Where to write the predictions CSV; empty skips persistence.
    std::string predictions_path;
};

/// Default directory for bundled and user-supplied data: $QMLBENCH_DATA_DIR,
/// else the source tree's data/ directory.
std::string default_data_dir();

/// Resolves a dataset reference:
///   adhoc:<shape>[:<seed>]           generated grid
///   wdbc | breast-cancer | wine      UCI file under data_dir
///   covid:<YYYY-MM-DD>[:<threshold>] labels from data_dir/us-counties.csv
///                                      and data_dir/county-population.csv
///   anything else                    dataset CSV path (cwd, then data_dir)
data::Dataset load_dataset_ref(const std::string& ref, const std::string& data_dir);

/// Applies the preprocessing stages of `spec` to a dataset. All fitted
/// transforms (scaler, PCA, min-max) are fitted on `fit` and then applied
/// to `ds`; pass the same dataset twice for a self-split run.
/// Stage order: subsample, reduce, randomize, scale, PCA, min-max.
struct Pipeline {
    /// Returns the transformed fit set; `extra` (if not null) is transformed
    /// with the same fitted parameters.
    static data::Dataset run(const ExperimentSpec& spec, const data::Dataset& fit, data::Dataset* extra = nullptr);
};

ExperimentReport run_experiment(const ExperimentSpec& spec, const data::Dataset& dataset,
                                const data::Dataset* test_dataset = nullptr, const RunOptions& options = {});
/// Resolves spec.dataset (and spec.test_dataset) through load_dataset_ref.
ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Every (state, fraction) combination, states outermost.
std::vector<ExperimentReport> volatility_matrix(const ExperimentSpec& spec, const data::Dataset& dataset,
                                                const std::vector<std::uint64_t>& states = {42, 12},
                                                const std::vector<double>& fractions = {0.33, 0.30},
                                                const RunOptions& options = {});

/// Percent of matching labels.
double accuracy_percent(const std::vector<int>& truth, const std::vector<int>& predicted);
bool single_class(const std::vector<int>& predicted);

/// CSV `index,truth,predicted`; index is the row in the preprocessed
/// dataset (or the position in the test set when `rows` is empty).
void write_predictions(const std::string& path, const std::vector<int>& truth, const std::vector<int>& predicted,
                       const std::vector<std::size_t>& rows = {});
std::pair<std::vector<int>, std::vector<int>> read_predictions(const std::string& path);

// ---------------------------------------------------------------------------
// Scaling fits

enum class FitModel { PowerLaw, ExponentialPlusLinear };

struct ComplexityFit {
    std::vector<double> xs;
    std::vector<double> times;
    FitModel model = FitModel::PowerLaw;

    /// Power law t = exp(c) x^p.
    double exponent = 0.0;
    double log_coefficient = 0.0;

    /// t = alpha beta^x + gamma x + delta0.
    double base = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double delta0 = 0.0;

    /// Pure exponential t = A B^x, fitted in log space.
    double pure_base = 0.0;
    double pure_scale = 0.0;

    /// Sum of squared residuals of the main model (log space for power law).
    double residual = 0.0;
};

/// Least squares on log t = p log n + c. Needs >= 3 positive points.
ComplexityFit fit_power_law(const std::vector<double>& sizes, const std::vector<double>& times);

/// Golden-section search over beta in (1, 4]; (alpha, gamma, delta0) come
/// from linear least squares at each beta. Needs >= 4 points and
/// non-constant times.
ComplexityFit fit_exponential(const std::vector<double>& dims, const std::vector<double>& times);

/// Median wall time of `reps` calls of fn, in seconds.
double median_time(const std::function<void()>& fn, unsigned reps = 3);

struct ScalingSeries {
    std::vector<double> xs;
    std::vector<double> times;
};

/// Exact kernel_matrix build time for n random points in [-1, 1]^dim.
ScalingSeries qsvm_kernel_scaling(const std::vector<std::size_t>& sizes, unsigned dim = 2, std::uint64_t seed = 1,
                                  unsigned reps = 3);
/// Mean time of one SPSA iteration against training-set size.
ScalingSeries vqc_iteration_scaling(const std::vector<std::size_t>& sizes, unsigned dim = 2,
                                    unsigned iterations = 4, std::uint64_t seed = 1, unsigned reps = 3);
/// Time of one vqc_forward call against feature dimension.
ScalingSeries vqc_forward_scaling(const std::vector<unsigned>& dims, std::uint64_t seed = 1, unsigned reps = 3);

} // namespace qmlbench::bench
