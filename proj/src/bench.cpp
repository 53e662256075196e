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

#include "qmlbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmlbench/covid.hpp"
#include "qmlbench/datagen.hpp"
#include "qmlbench/preprocess.hpp"
#include "qmlbench/qkernel.hpp"
#include "qmlbench/svm.hpp"
#include "qmlbench/uci.hpp"
#include "qmlbench/vqc.hpp"

#ifndef QMLBENCH_SOURCE_DATA_DIR
#define QMLBENCH_SOURCE_DATA_DIR "data"
#endif

namespace qmlbench::bench {

namespace fs = std::filesystem;
using data::Dataset;

Algorithm parse_algorithm(const std::string& name)
{
    if (name == "svm-linear")
        return Algorithm::SvmLinear;
    if (name == "svm-rbf")
        return Algorithm::SvmRbf;
    if (name == "qsvm")
        return Algorithm::Qsvm;
    if (name == "vqc")
        return Algorithm::Vqc;
    throw std::invalid_argument("unknown algorithm '" + name + "' (svm-linear, svm-rbf, qsvm, vqc)");
}

std::string algorithm_name(Algorithm a)
{
    switch (a) {
    case Algorithm::SvmLinear:
        return "svm-linear";
    case Algorithm::SvmRbf:
        return "svm-rbf";
    case Algorithm::Qsvm:
        return "qsvm";
    case Algorithm::Vqc:
        return "vqc";
    }
    return "unknown";
}

Backend parse_backend(const std::string& name)
{
    if (name == "local")
        return Backend::Local;
    if (name == "exact-sim")
        return Backend::ExactSim;
    if (name == "shot-sim")
        return Backend::ShotSim;
    throw std::invalid_argument("unknown backend '" + name + "' (local, exact-sim, shot-sim)");
}

std::string backend_name(Backend b)
{
    switch (b) {
    case Backend::Local:
        return "local";
    case Backend::ExactSim:
        return "exact-sim";
    case Backend::ShotSim:
        return "shot-sim";
    }
    return "unknown";
}

bool is_quantum(Algorithm a) { return a == Algorithm::Qsvm || a == Algorithm::Vqc; }

Backend default_backend(Algorithm a) { return is_quantum(a) ? Backend::ExactSim : Backend::Local; }

void ExperimentSpec::validate() const
{
    if (dataset.empty())
        throw std::invalid_argument("no dataset given");
    if (is_quantum(algorithm) && backend == Backend::Local)
        throw std::invalid_argument(algorithm_name(algorithm) + " needs a simulator backend (exact-sim or shot-sim)");
    if (!is_quantum(algorithm) && backend != Backend::Local)
        throw std::invalid_argument(algorithm_name(algorithm) + " runs on the local backend only");
    if (!(test_fraction > 0.0 && test_fraction < 1.0) && !test_dataset)
        throw std::invalid_argument("test fraction must be in (0, 1)");
    if (pca_dim && *pca_dim == 0)
        throw std::invalid_argument("PCA dimension must be >= 1");
    if (is_quantum(algorithm) && pca_dim && *pca_dim > max_quantum_dim)
        throw std::invalid_argument("feature dimension " + std::to_string(*pca_dim) + " exceeds the " +
                                    algorithm_name(algorithm) + " limit of " + std::to_string(max_quantum_dim));
    if (max_quantum_dim < 1 || max_quantum_dim > 24)
        throw std::invalid_argument("quantum dimension limit must be in [1, 24]");
    if (reduce_delta && !(*reduce_delta >= 0.0))
        throw std::invalid_argument("reduction delta must be >= 0");
    if (subsample_per_class && *subsample_per_class == 0)
        throw std::invalid_argument("subsample must be >= 1 per class");
    if (!(feature_range.first < feature_range.second))
        throw std::invalid_argument("feature range must satisfy lo < hi");
    if (!(C > 0.0))
        throw std::invalid_argument("C must be positive");
    if (gamma && !(*gamma > 0.0))
        throw std::invalid_argument("gamma must be positive");
    if (reps < 1)
        throw std::invalid_argument("feature map reps must be >= 1");
    if (vqc_iterations < 1)
        throw std::invalid_argument("VQC iterations must be >= 1");
    if (backend == Backend::ShotSim && shots < 1)
        throw std::invalid_argument("shots must be >= 1");
    if (randomize)
        data::PRNGParams::make(randomize->a, randomize->b, randomize->m);
    if (prng_scale < 1)
        throw std::invalid_argument("PRNG scale must be a positive power of ten");
}

std::string default_data_dir()
{
    if (const char* env = std::getenv("QMLBENCH_DATA_DIR"); env && *env)
        return env;
    return QMLBENCH_SOURCE_DATA_DIR;
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

std::string in_dir(const std::string& dir, const std::string& file)
{
    return dir.empty() ? file : (fs::path(dir) / file).string();
}

} // namespace

Dataset load_dataset_ref(const std::string& ref, const std::string& data_dir)
{
    const std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
    if (ref.rfind("adhoc:", 0) == 0) {
        const auto parts = split_on(ref, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("dataset reference '" + ref + "': expected adhoc:<shape>[:<seed>]");
        const std::uint64_t seed = parts.size() == 3 ? std::stoull(parts[2]) : 0;
        return data::gen_adhoc(data::parse_adhoc_shape(parts[1]), seed);
    }
    if (ref == "wdbc" || ref == "breast-cancer")
        return data::load_uci(data::UciKind::Wdbc, in_dir(dir, "wdbc.data"));
    if (ref == "wine")
        return data::load_uci(data::UciKind::Wine, in_dir(dir, "wine.data"));
    if (ref.rfind("covid:", 0) == 0) {
        const auto parts = split_on(ref, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("dataset reference '" + ref + "': expected covid:<date>[:<threshold>]");
        data::CovidConfig cfg;
        cfg.label_date = data::Date::parse(parts[1]);
        if (parts.size() == 3)
            cfg.threshold = std::stod(parts[2]);
        const auto cases = data::read_case_table(in_dir(dir, "us-counties.csv"));
        const auto pop = data::read_population_table(in_dir(dir, "county-population.csv"));
        return data::covid_label(cases, pop, cfg).dataset;
    }
    if (fs::exists(ref))
        return data::read_csv_file(ref);
    if (const auto p = in_dir(dir, ref); fs::exists(p))
        return data::read_csv_file(p);
    throw std::runtime_error("cannot resolve dataset '" + ref + "' (looked in the working directory and " + dir + ")");
}

namespace {

Dataset with_features(const Dataset& ds, Matrix X, std::vector<std::string> names = {})
{
    Dataset out = Dataset::make(ds.name, std::move(X), ds.labels, std::move(names));
    out.metadata = ds.metadata;
    return out;
}

std::vector<std::string> prefixed_names(const std::string& prefix, Eigen::Index k)
{
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < k; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

} // namespace

Dataset Pipeline::run(const ExperimentSpec& spec, const Dataset& fit, Dataset* extra)
{
    Dataset ds = fit;
    if (spec.subsample_per_class)
        ds = data::take_per_class(ds, *spec.subsample_per_class);
    if (spec.reduce_delta) {
        auto plane = data::fit_reduction_hyperplane(ds, spec.C);
        auto reduced = data::reduce_near_hyperplane(ds, plane, *spec.reduce_delta);
        ds = std::move(reduced.dataset);
        if (ds.size() == 0)
            throw std::runtime_error("reduction with delta " + data::format_number(*spec.reduce_delta) +
                                     " removed every row");
    }
    if (spec.randomize) {
        // The map is defined on non-negative integers; shift each column so
        // its minimum over all rows involved is zero.
        Vector lo = ds.features.colwise().minCoeff().transpose();
        if (extra) {
            if (extra->dims() != ds.dims())
                throw std::invalid_argument("test dataset has a different feature count");
            lo = lo.cwiseMin(extra->features.colwise().minCoeff().transpose());
        }
        const Vector shift = (-lo).cwiseMax(0.0);
        const auto params = data::PRNGParams::make(spec.randomize->a, spec.randomize->b, spec.randomize->m);
        auto randomize = [&](Dataset& d) {
            Dataset shifted = with_features(d, d.features.rowwise() + shift.transpose(), d.feature_names);
            d = data::prng_apply(shifted, params, data::PrngDirection::Forward, spec.prng_scale);
        };
        randomize(ds);
        if (extra)
            randomize(*extra);
    }
    if (spec.scale) {
        const auto sp = preprocess::fit_scaler(ds.features);
        ds = with_features(ds, preprocess::apply_scaler(sp, ds.features), ds.feature_names);
        if (extra)
            *extra = with_features(*extra, preprocess::apply_scaler(sp, extra->features), extra->feature_names);
    }
    if (spec.pca_dim) {
        const auto k = static_cast<Eigen::Index>(*spec.pca_dim);
        if (k > ds.dims())
            throw std::invalid_argument("PCA dimension " + std::to_string(k) + " exceeds feature count " +
                                        std::to_string(ds.dims()));
        const auto pca = preprocess::fit_pca(ds.features, k);
        ds = with_features(ds, preprocess::project_pca(pca, ds.features), prefixed_names("pc", k));
        if (extra)
            *extra = with_features(*extra, preprocess::project_pca(pca, extra->features), prefixed_names("pc", k));
    }
    if (is_quantum(spec.algorithm)) {
        const auto mm = preprocess::fit_minmax(ds.features, spec.feature_range.first, spec.feature_range.second);
        ds = with_features(ds, preprocess::apply_minmax(mm, ds.features), ds.feature_names);
        if (extra)
            *extra = with_features(*extra, preprocess::apply_minmax(mm, extra->features), extra->feature_names);
    }
    return ds;
}

double accuracy_percent(const std::vector<int>& truth, const std::vector<int>& predicted)
{
    if (truth.size() != predicted.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (truth.empty())
        throw std::invalid_argument("accuracy: empty test set");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        hit += truth[i] == predicted[i] ? 1 : 0;
    return 100.0 * static_cast<double>(hit) / static_cast<double>(truth.size());
}

bool single_class(const std::vector<int>& predicted)
{
    return std::set<int>(predicted.begin(), predicted.end()).size() == 1;
}

void write_predictions(const std::string& path, const std::vector<int>& truth, const std::vector<int>& predicted,
                       const std::vector<std::size_t>& rows)
{
    if (!rows.empty() && rows.size() != truth.size())
        throw std::invalid_argument("write_predictions: row index count mismatch");
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write predictions to '" + path + "'");
    out << "index,truth,predicted\n";
    for (std::size_t i = 0; i < truth.size(); ++i)
        out << (rows.empty() ? i : rows[i]) << ',' << truth[i] << ',' << predicted[i] << '\n';
}

std::pair<std::vector<int>, std::vector<int>> read_predictions(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read predictions from '" + path + "'");
    std::string line;
    std::getline(in, line);
    std::vector<int> truth, pred;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto cells = split_on(line, ',');
        if (cells.size() != 3)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 columns");
        truth.push_back(std::stoi(cells[1]));
        pred.push_back(std::stoi(cells[2]));
    }
    return {truth, pred};
}

namespace {

std::vector<int> run_classical(const ExperimentSpec& spec, const Dataset& train, const Dataset& test)
{
    svm::SmoOptions opt;
    opt.C = spec.C;
    const auto kernel = spec.algorithm == Algorithm::SvmLinear
                            ? svm::KernelSpec::linear()
                            : svm::KernelSpec::rbf(spec.gamma.value_or(svm::default_gamma(train.features)));
    if (train.classes().size() > 2) {
        const auto model = svm::one_vs_rest(train.features, train.labels, kernel, opt);
        std::vector<int> out;
        for (Eigen::Index i = 0; i < test.features.rows(); ++i)
            out.push_back(svm::predict_multiclass(model, test.features.row(i).transpose()));
        return out;
    }
    const auto model = svm::train_svm(train.features, train.labels, kernel, opt);
    return svm::predict_svm_rows(model, test.features);
}

std::vector<int> run_qsvm(const ExperimentSpec& spec, const Dataset& train, const Dataset& test, unsigned jobs)
{
    const qkernel::FeatureMapSpec fm{static_cast<unsigned>(train.dims()), spec.reps, qkernel::Entanglement::Linear};
    std::optional<qkernel::ShotOptions> train_shots, test_shots;
    if (spec.backend == Backend::ShotSim) {
        train_shots = qkernel::ShotOptions{spec.shots, derive_seed(spec.seed, 1)};
        test_shots = qkernel::ShotOptions{spec.shots, derive_seed(spec.seed, 2)};
    }
    svm::SmoOptions opt;
    opt.C = spec.C;
    const Matrix K = qkernel::kernel_matrix(train.features, fm, train_shots, jobs);
    const auto model = svm::train_svm_precomputed(K, train.labels, opt);

    Matrix sv(static_cast<Eigen::Index>(model.support_indices.size()), train.dims());
    for (std::size_t s = 0; s < model.support_indices.size(); ++s)
        sv.row(static_cast<Eigen::Index>(s)) = train.features.row(static_cast<Eigen::Index>(model.support_indices[s]));
    const Matrix cross = qkernel::cross_kernel(test.features, sv, fm, test_shots, jobs);
    std::vector<int> out;
    std::vector<double> row(static_cast<std::size_t>(sv.rows()));
    for (Eigen::Index i = 0; i < cross.rows(); ++i) {
        for (Eigen::Index s = 0; s < cross.cols(); ++s)
            row[static_cast<std::size_t>(s)] = cross(i, s);
        out.push_back(svm::predict_svm_precomputed(model, row).label);
    }
    return out;
}

std::vector<int> run_vqc(const ExperimentSpec& spec, const Dataset& train, const Dataset& test, unsigned jobs)
{
    const auto classes = train.classes();
    if (classes.size() != 2)
        throw std::invalid_argument("vqc needs exactly two classes in the training set, got " +
                                    std::to_string(classes.size()));
    auto vs = vqc::VQCSpec::for_dimension(static_cast<unsigned>(train.dims()));
    vs.feature_map.reps = spec.reps;
    vs.ansatz_depth = spec.ansatz_depth;
    vs.max_iterations = spec.vqc_iterations;
    if (spec.backend == Backend::ShotSim)
        vs.shots = spec.shots;
    std::vector<int> y01;
    for (int v : train.labels)
        y01.push_back(v == classes[1] ? 1 : 0);
    const auto params = vqc::train_vqc(train.features, y01, vs, spec.seed, nullptr, jobs);
    std::vector<int> out;
    for (Eigen::Index i = 0; i < test.features.rows(); ++i) {
        const Vector x = test.features.row(i).transpose();
        const int bit = vqc::predict_vqc({x.data(), static_cast<std::size_t>(x.size())}, params, vs,
                                         derive_seed(spec.seed, 3, static_cast<std::uint64_t>(i)));
        out.push_back(classes[static_cast<std::size_t>(bit)]);
    }
    return out;
}

} // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec, const Dataset& dataset, const Dataset* test_dataset,
                                const RunOptions& options)
{
    spec.validate();
    Dataset train, test;
    std::vector<std::size_t> test_rows;
    if (test_dataset) {
        test = *test_dataset;
        train = Pipeline::run(spec, dataset, &test);
    } else {
        const Dataset prepared = Pipeline::run(spec, dataset);
        auto split = data::train_test_split(prepared, spec.test_fraction, spec.state);
        train = std::move(split.train);
        test = std::move(split.test);
        test_rows = std::move(split.test_indices);
    }
    if (test.size() == 0)
        throw std::runtime_error("empty test set");
    if (train.classes().size() < 2)
        throw std::runtime_error("training set contains a single class");
    if (is_quantum(spec.algorithm) && train.dims() > static_cast<Eigen::Index>(spec.max_quantum_dim))
        throw std::invalid_argument("feature dimension " + std::to_string(train.dims()) + " exceeds the " +
                                    algorithm_name(spec.algorithm) + " limit of " +
                                    std::to_string(spec.max_quantum_dim));

    const unsigned jobs = options.jobs;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> predicted;
    switch (spec.algorithm) {
    case Algorithm::SvmLinear:
    case Algorithm::SvmRbf:
        predicted = run_classical(spec, train, test);
        break;
    case Algorithm::Qsvm:
        predicted = run_qsvm(spec, train, test, jobs);
        break;
    case Algorithm::Vqc:
        predicted = run_vqc(spec, train, test, jobs);
        break;
    }
    const auto t1 = std::chrono::steady_clock::now();

    ExperimentReport r;
    r.spec = spec;
    r.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.truth = test.labels;
    r.predictions = std::move(predicted);
    r.accuracy_percent = accuracy_percent(r.truth, r.predictions);
    r.one_class = single_class(r.predictions);
    r.train_size = train.size();
    r.test_size = test.size();
    if (!options.predictions_path.empty()) {
        write_predictions(options.predictions_path, r.truth, r.predictions, test_rows);
        r.predictions_path = options.predictions_path;
    }
    return r;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& options)
{
    spec.validate();
    const Dataset ds = load_dataset_ref(spec.dataset, options.data_dir);
    if (spec.test_dataset) {
        const Dataset test = load_dataset_ref(*spec.test_dataset, options.data_dir);
        return run_experiment(spec, ds, &test, options);
    }
    return run_experiment(spec, ds, nullptr, options);
}

std::vector<ExperimentReport> volatility_matrix(const ExperimentSpec& spec, const Dataset& dataset,
                                                const std::vector<std::uint64_t>& states,
                                                const std::vector<double>& fractions, const RunOptions& options)
{
    std::vector<ExperimentReport> out;
    for (auto state : states)
        for (double frac : fractions) {
            ExperimentSpec s = spec;
            s.state = state;
            s.test_fraction = frac;
            RunOptions o = options;
            if (!o.predictions_path.empty())
                o.predictions_path += ".s" + std::to_string(state) + "_f" + data::format_number(frac) + ".csv";
            out.push_back(run_experiment(s, dataset, nullptr, o));
        }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_fit_input(const std::vector<double>& xs, const std::vector<double>& ts, std::size_t min_points)
{
    if (xs.size() != ts.size())
        throw std::invalid_argument("fit: xs and times differ in length");
    if (xs.size() < min_points)
        throw std::invalid_argument("fit: need at least " + std::to_string(min_points) + " points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("fit: xs must be strictly increasing");
    for (double v : xs)
        if (!std::isfinite(v))
            throw std::invalid_argument("fit: non-finite x");
    for (double v : ts)
        if (!std::isfinite(v))
            throw std::invalid_argument("fit: non-finite time");
}

// Least-squares line y = slope x + icpt.
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

struct LinearSolution {
    double alpha, gamma, delta0, sse;
};

LinearSolution solve_at(double beta, const std::vector<double>& xs, const std::vector<double>& ts)
{
    const auto n = static_cast<Eigen::Index>(xs.size());
    Matrix A(n, 3);
    Vector b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = xs[static_cast<std::size_t>(i)];
        A(i, 0) = std::pow(beta, x);
        A(i, 1) = x;
        A(i, 2) = 1.0;
        b(i) = ts[static_cast<std::size_t>(i)];
    }
    // Column scaling keeps the basis well conditioned when beta^x spans
    // several decades.
    const Vector norms = A.colwise().norm().transpose();
    const Matrix As = A * norms.cwiseInverse().asDiagonal();
    const Vector coef = As.completeOrthogonalDecomposition().solve(b).cwiseQuotient(norms);
    const double sse = (A * coef - b).squaredNorm();
    return {coef(0), coef(1), coef(2), sse};
}

} // namespace

ComplexityFit fit_power_law(const std::vector<double>& sizes, const std::vector<double>& times)
{
    check_fit_input(sizes, times, 3);
    std::vector<double> lx, lt;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0) || !(times[i] > 0))
            throw std::invalid_argument("power-law fit needs positive sizes and times");
        lx.push_back(std::log(sizes[i]));
        lt.push_back(std::log(times[i]));
    }
    const auto [p, c] = line_fit(lx, lt);
    ComplexityFit f;
    f.xs = sizes;
    f.times = times;
    f.model = FitModel::PowerLaw;
    f.exponent = p;
    f.log_coefficient = c;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = lt[i] - (p * lx[i] + c);
        f.residual += r * r;
    }
    return f;
}

ComplexityFit fit_exponential(const std::vector<double>& dims, const std::vector<double>& times)
{
    check_fit_input(dims, times, 4);
    const auto [tmin, tmax] = std::minmax_element(times.begin(), times.end());
    if (*tmax - *tmin <= 1e-14 * std::max(1.0, std::abs(*tmax)))
        throw std::invalid_argument("exponential fit: times are constant");

    constexpr double kLo = 1.0 + 1e-6;
    constexpr double kHi = 4.0;
    auto sse = [&](double beta) { return solve_at(beta, dims, times).sse; };

    // Coarse scan to bracket the global minimum, then golden-section refine.
    constexpr int kScan = 200;
    double best_beta = kHi;
    double best = std::numeric_limits<double>::infinity();
    int best_k = kScan;
    for (int k = 0; k <= kScan; ++k) {
        const double beta = kLo + (kHi - kLo) * k / kScan;
        const double v = sse(beta);
        if (v < best) {
            best = v;
            best_beta = beta;
            best_k = k;
        }
    }
    double a = kLo + (kHi - kLo) * std::max(0, best_k - 1) / kScan;
    double b = kLo + (kHi - kLo) * std::min(kScan, best_k + 1) / kScan;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = sse(x1), f2 = sse(x2);
    for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = sse(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = sse(x2);
        }
    }
    const double refined = 0.5 * (a + b);
    if (sse(refined) <= best)
        best_beta = refined;

    const auto sol = solve_at(best_beta, dims, times);
    ComplexityFit f;
    f.xs = dims;
    f.times = times;
    f.model = FitModel::ExponentialPlusLinear;
    f.base = best_beta;
    f.alpha = sol.alpha;
    f.gamma = sol.gamma;
    f.delta0 = sol.delta0;
    f.residual = sol.sse;

    if (*tmin > 0) {
        std::vector<double> lt;
        for (double t : times)
            lt.push_back(std::log(t));
        const auto [slope, icpt] = line_fit(dims, lt);
        f.pure_base = std::exp(slope);
        f.pure_scale = std::exp(icpt);
    }
    return f;
}

double median_time(const std::function<void()>& fn, unsigned reps)
{
    if (reps == 0)
        throw std::invalid_argument("median_time: reps must be >= 1");
    std::vector<double> ts;
    for (unsigned r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        ts.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(ts.begin(), ts.end());
    return ts[ts.size() / 2];
}

namespace {

Matrix random_points(std::size_t n, unsigned dim, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix X(static_cast<Eigen::Index>(n), dim);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.cols(); ++j)
            X(i, j) = rng.uniform(-1.0, 1.0);
    return X;
}

// Median seconds per call of each job. Every job is batched until one timed
// rep lasts kMinRepSeconds, and reps are interleaved across jobs so slow
// spells of a shared machine spread over every size instead of skewing one.
constexpr double kMinRepSeconds = 0.2;

std::vector<double> interleaved_medians(const std::vector<std::function<void()>>& jobs, unsigned reps)
{
    if (reps == 0)
        throw std::invalid_argument("timing reps must be >= 1");
    std::vector<std::size_t> batch(jobs.size(), 1);
    auto time_batch = [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t b = 0; b < batch[i]; ++b)
            jobs[i]();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    for (std::size_t i = 0; i < jobs.size(); ++i)
        while (time_batch(i) < kMinRepSeconds)
            batch[i] *= 2;
    std::vector<std::vector<double>> samples(jobs.size());
    for (unsigned r = 0; r < reps; ++r)
        for (std::size_t i = 0; i < jobs.size(); ++i)
            samples[i].push_back(time_batch(i) / static_cast<double>(batch[i]));
    std::vector<double> out;
    for (auto& v : samples) {
        std::sort(v.begin(), v.end());
        out.push_back(v[v.size() / 2]);
    }
    return out;
}

} // namespace

ScalingSeries qsvm_kernel_scaling(const std::vector<std::size_t>& sizes, unsigned dim, std::uint64_t seed,
                                  unsigned reps)
{
    const qkernel::FeatureMapSpec fm{dim, 2, qkernel::Entanglement::Linear};
    std::vector<Matrix> inputs;
    for (auto n : sizes)
        inputs.push_back(random_points(n, dim, derive_seed(seed, n)));
    volatile double sink = 0;
    std::vector<std::function<void()>> jobs;
    for (const auto& X : inputs)
        jobs.push_back([&] { sink = sink + qkernel::kernel_matrix(X, fm, std::nullopt, 1)(0, 0); });
    ScalingSeries s;
    for (auto n : sizes)
        s.xs.push_back(static_cast<double>(n));
    s.times = interleaved_medians(jobs, reps);
    return s;
}

ScalingSeries vqc_iteration_scaling(const std::vector<std::size_t>& sizes, unsigned dim, unsigned iterations,
                                    std::uint64_t seed, unsigned reps)
{
    auto spec = vqc::VQCSpec::for_dimension(dim);
    spec.max_iterations = iterations;
    struct Input {
        Matrix X;
        std::vector<int> y;
    };
    std::vector<Input> inputs;
    for (auto n : sizes) {
        Input in{random_points(n, dim, derive_seed(seed, n)), std::vector<int>(n)};
        for (std::size_t i = 0; i < n; ++i)
            in.y[i] = static_cast<int>(i % 2);
        inputs.push_back(std::move(in));
    }
    std::vector<std::function<void()>> jobs;
    for (const auto& in : inputs)
        jobs.push_back([&] { vqc::train_vqc(in.X, in.y, spec, seed, nullptr, 1); });
    ScalingSeries s;
    for (auto n : sizes)
        s.xs.push_back(static_cast<double>(n));
    for (double t : interleaved_medians(jobs, reps))
        s.times.push_back(t / iterations);
    return s;
}

ScalingSeries vqc_forward_scaling(const std::vector<unsigned>& dims, std::uint64_t seed, unsigned reps)
{
    struct Input {
        vqc::VQCSpec spec;
        std::vector<double> x;
        vqc::VQCParams params;
    };
    std::vector<Input> inputs;
    for (unsigned d : dims) {
        Input in{vqc::VQCSpec::for_dimension(d), std::vector<double>(d), {}};
        Rng rng(derive_seed(seed, d));
        for (auto& v : in.x)
            v = rng.uniform(-1.0, 1.0);
        for (std::size_t k = 0; k < in.spec.parameter_count(); ++k)
            in.params.theta.push_back(rng.uniform(-3.14159, 3.14159));
        inputs.push_back(std::move(in));
    }
    volatile double sink = 0;
    std::vector<std::function<void()>> jobs;
    for (const auto& in : inputs)
        jobs.push_back([&] { sink = sink + vqc::vqc_forward(in.x, in.params, in.spec).p1; });
    ScalingSeries s;
    for (unsigned d : dims)
        s.xs.push_back(d);
    s.times = interleaved_medians(jobs, reps);
    return s;
}

} // namespace qmlbench::bench
