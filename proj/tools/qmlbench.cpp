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

// qmlbench command-line front end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmlbench/anderson.hpp"
#include "qmlbench/bench.hpp"
#include "qmlbench/covid.hpp"
#include "qmlbench/datagen.hpp"
#include "qmlbench/dataset.hpp"
#include "qmlbench/prng.hpp"
#include "qmlbench/report.hpp"
#include "qmlbench/run_config.hpp"
#include "qmlbench/serialize.hpp"
#include "qmlbench/uci.hpp"

namespace fs = std::filesystem;
using namespace qmlbench;

namespace {

/// Bad flag values detected after CLI11 parsing; exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void ensure_parent(const std::string& path)
{
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty())
        fs::create_directories(parent);
}

void emit(const std::string& kind, const std::string& path) { std::cout << kind << '=' << path << '\n'; }

void write_dataset(const data::Dataset& ds, const std::string& path)
{
    ensure_parent(path);
    data::write_csv(path, ds);
    emit("dataset", path);
    if (!ds.metadata.empty()) {
        nlohmann::json meta(ds.metadata);
        meta["name"] = ds.name;
        meta["rows"] = ds.size();
        const std::string mp = path + ".meta.json";
        serialize::write_text_file(mp, meta.dump(2) + "\n");
        emit("metadata", mp);
    }
}

std::vector<double> parse_axis(const std::string& text, const std::string& flag)
{
    // lo:hi:step or a comma list
    try {
        if (text.find(':') != std::string::npos) {
            std::vector<double> p;
            std::stringstream ss(text);
            std::string part;
            while (std::getline(ss, part, ':'))
                p.push_back(std::stod(part));
            if (p.size() != 3 || !(p[2] > 0) || p[1] < p[0])
                throw UsageError(flag + " expects lo:hi:step with step > 0");
            return anderson::grid(p[0], p[1], p[2]);
        }
        std::vector<double> out;
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ','))
            out.push_back(std::stod(part));
        if (out.empty())
            throw UsageError(flag + " is empty");
        return out;
    } catch (const std::logic_error&) {
        throw UsageError(flag + ": cannot parse '" + text + "'");
    }
}

struct SpecFlags {
    std::string algo = "svm-linear";
    std::string backend;
    std::string data;
    std::string test_data;
    unsigned long long state = 42;
    double test_frac = 0.33;
    bool scale = false;
    unsigned pca = 0;
    std::optional<double> delta;
    std::string randomize;
    long long prng_scale = 1;
    std::size_t subsample = 0;
    double C = 1.0;
    std::optional<double> gamma;
    unsigned reps = 2;
    unsigned depth = 3;
    unsigned iterations = 200;
    unsigned long long shots = 1024;
    unsigned long long seed = 0;
    unsigned qsvm_max_dim = 24;
    std::string feature_range = "-1:1";
};

void add_spec_flags(CLI::App* app, SpecFlags& f, bool need_data = true)
{
    app->add_option("--algo", f.algo, "svm-linear | svm-rbf | qsvm | vqc")->capture_default_str();
    app->add_option("--backend", f.backend, "local | exact-sim | shot-sim (default by algorithm)");
    auto* d = app->add_option("--data", f.data, "dataset reference or CSV path");
    if (need_data)
        d->required();
    app->add_option("--test-data", f.test_data, "separate test dataset (no split)");
    app->add_option("--state", f.state, "split random state")->capture_default_str();
    app->add_option("--test-frac", f.test_frac, "test fraction")->capture_default_str();
    app->add_flag("--scale", f.scale, "standardize features");
    app->add_option("--pca", f.pca, "PCA components (0 = off)");
    app->add_option("--delta", f.delta, "keep rows within delta of a linear hyperplane");
    app->add_option("--randomize", f.randomize, "PRNG a:b:m or 'default'");
    app->add_option("--prng-scale", f.prng_scale, "PRNG quantization scale (power of ten)")->capture_default_str();
    app->add_option("--subsample", f.subsample, "first N rows per class (0 = all)");
    app->add_option("--C", f.C, "SVM box constraint")->capture_default_str();
    app->add_option("--gamma", f.gamma, "RBF gamma (default 1/(d Var X))");
    app->add_option("--reps", f.reps, "feature-map repetitions")->capture_default_str();
    app->add_option("--depth", f.depth, "VQC ansatz depth")->capture_default_str();
    app->add_option("--iterations", f.iterations, "VQC SPSA iterations")->capture_default_str();
    app->add_option("--shots", f.shots, "shots for shot-sim")->capture_default_str();
    app->add_option("--seed", f.seed, "classifier seed")->capture_default_str();
    app->add_option("--qsvm-max-dim", f.qsvm_max_dim, "largest feature dimension for qsvm/vqc")
        ->capture_default_str();
    app->add_option("--feature-range", f.feature_range, "quantum input range lo:hi")->capture_default_str();
}

bench::ExperimentSpec spec_from_flags(const SpecFlags& f)
{
    bench::ExperimentSpec s;
    try {
        cli::apply_setting(s, "algorithm", f.algo);
        s.backend = f.backend.empty() ? bench::default_backend(s.algorithm) : bench::parse_backend(f.backend);
        s.dataset = f.data;
        if (!f.test_data.empty())
            s.test_dataset = f.test_data;
        s.state = f.state;
        s.test_fraction = f.test_frac;
        s.scale = f.scale;
        if (f.pca)
            s.pca_dim = f.pca;
        s.reduce_delta = f.delta;
        if (!f.randomize.empty())
            cli::apply_setting(s, "randomize", f.randomize);
        s.prng_scale = f.prng_scale;
        if (f.subsample)
            s.subsample_per_class = f.subsample;
        s.C = f.C;
        s.gamma = f.gamma;
        s.reps = f.reps;
        s.ansatz_depth = f.depth;
        s.vqc_iterations = f.iterations;
        s.shots = f.shots;
        s.seed = f.seed;
        s.max_quantum_dim = f.qsvm_max_dim;
        cli::apply_setting(s, "feature_range", f.feature_range);
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return s;
}

std::string with_suffix(const std::string& out, const std::string& suffix)
{
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json")
        return out.substr(0, out.size() - 5) + suffix;
    return out + suffix;
}

std::string report_path(const std::string& out)
{
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json")
        return out;
    return out + ".json";
}

void finish_reports(const std::vector<bench::ExperimentReport>& reports, const std::string& out)
{
    const std::string rp = report_path(out);
    ensure_parent(rp);
    serialize::write_text_file(rp, serialize::reports_to_json(reports));
    std::cerr << bench::render_report(reports, bench::ReportFormat::TextTable);
    for (const auto& r : reports)
        if (!r.predictions_path.empty())
            emit("predictions", r.predictions_path);
    emit("report", rp);
}

nlohmann::json fit_json(const bench::ComplexityFit& f)
{
    nlohmann::json j{{"xs", f.xs}, {"times", f.times}, {"residual", f.residual}};
    if (f.model == bench::FitModel::PowerLaw) {
        j["model"] = "power-law";
        j["exponent"] = f.exponent;
        j["log_coefficient"] = f.log_coefficient;
    } else {
        j["model"] = "exponential-plus-linear";
        j["base"] = f.base;
        j["alpha"] = f.alpha;
        j["gamma"] = f.gamma;
        j["delta0"] = f.delta0;
        j["pure_base"] = f.pure_base;
        j["pure_scale"] = f.pure_scale;
    }
    return j;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string part;
    try {
        while (std::getline(ss, part, ','))
            out.push_back(static_cast<T>(std::stoull(part)));
    } catch (const std::logic_error&) {
        throw UsageError(flag + ": cannot parse '" + text + "'");
    }
    if (out.empty())
        throw UsageError(flag + " is empty");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qmlbench: quantum and classical kernel classifier benchmarks"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    std::string data_dir = bench::default_data_dir();
    app.add_option("--jobs", jobs, "worker threads (0 = hardware concurrency)");
    app.add_option("--data-dir", data_dir, "dataset directory (default $QMLBENCH_DATA_DIR)")->capture_default_str();

    // adhoc gen
    auto* adhoc = app.add_subcommand("adhoc", "ad-hoc grid datasets")->require_subcommand(1);
    auto* adhoc_gen = adhoc->add_subcommand("gen", "generate a 20x20 grid dataset");
    std::string shape = "separable", adhoc_out;
    std::uint64_t adhoc_seed = 0;
    adhoc_gen->add_option("--shape", shape, "separable | alternating | random | circle")->capture_default_str();
    adhoc_gen->add_option("--seed", adhoc_seed, "seed (random shape only)");
    adhoc_gen->add_option("--out", adhoc_out, "output CSV")->required();

    // anderson gen
    auto* anderson_cmd = app.add_subcommand("anderson", "Anderson localization datasets")->require_subcommand(1);
    auto* anderson_gen = anderson_cmd->add_subcommand("gen", "finite-size-scaling phase map");
    std::string energies = "0:0:1", disorders = "2:30:2", sizes_text = "4,6,8", anderson_out, raw_out, boundary = "open";
    unsigned n_configs = 20;
    std::uint64_t anderson_seed = 1;
    anderson_gen->add_option("--energies", energies, "lo:hi:step or list")->capture_default_str();
    anderson_gen->add_option("--disorders", disorders, "lo:hi:step or list")->capture_default_str();
    anderson_gen->add_option("--sizes", sizes_text, "cube sizes L")->capture_default_str();
    anderson_gen->add_option("--configs", n_configs, "disorder configurations per point")->capture_default_str();
    anderson_gen->add_option("--seed", anderson_seed, "disorder seed")->capture_default_str();
    anderson_gen->add_option("--boundary", boundary, "transverse boundary: open | periodic")->capture_default_str();
    anderson_gen->add_option("--out", anderson_out, "output dataset CSV")->required();
    anderson_gen->add_option("--raw", raw_out, "raw slope CSV (default <out>.raw.csv)");

    // covid label
    auto* covid = app.add_subcommand("covid", "county case-curve labels")->require_subcommand(1);
    auto* covid_label = covid->add_subcommand("label", "label counties safe/unsafe");
    std::string cases_path, pop_path, date = "2020-05-08", covid_out;
    int window = 3;
    double threshold = 5.0;
    covid_label->add_option("--cases", cases_path, "NYT county CSV (default <data-dir>/us-counties.csv)");
    covid_label->add_option("--population", pop_path, "fips,population CSV (default <data-dir>/county-population.csv)");
    covid_label->add_option("--date", date, "label date YYYY-MM-DD")->capture_default_str();
    covid_label->add_option("--window", window, "days")->capture_default_str();
    covid_label->add_option("--threshold", threshold, "new cases per day")->capture_default_str();
    covid_label->add_option("--out", covid_out, "output CSV")->required();

    // uci load
    auto* uci = app.add_subcommand("uci", "UCI datasets")->require_subcommand(1);
    auto* uci_load = uci->add_subcommand("load", "convert a UCI file to dataset CSV");
    std::string uci_kind = "wdbc", uci_path, uci_out;
    uci_load->add_option("--kind", uci_kind, "wdbc | wine")->capture_default_str();
    uci_load->add_option("--path", uci_path, "UCI file (default <data-dir>/<kind>.data)");
    uci_load->add_option("--out", uci_out, "output CSV")->required();

    // reduce
    auto* reduce = app.add_subcommand("reduce", "keep rows near a linear SVM hyperplane");
    std::string reduce_data, reduce_out;
    double reduce_delta = 0.0, reduce_C = 1.0;
    reduce->add_option("--data", reduce_data, "dataset reference or CSV")->required();
    reduce->add_option("--delta", reduce_delta, "distance threshold")->required();
    reduce->add_option("--C", reduce_C, "SVM box constraint")->capture_default_str();
    reduce->add_option("--out", reduce_out, "output CSV")->required();

    // randomize
    auto* randomize = app.add_subcommand("randomize", "invertible PRNG feature scrambling");
    std::string rnd_data, rnd_out;
    long long rnd_a = 7919, rnd_b = 13, rnd_m = 104729, rnd_scale = 1;
    bool rnd_inverse = false;
    randomize->add_option("--data", rnd_data, "dataset reference or CSV")->required();
    randomize->add_option("--a", rnd_a, "prime multiplier")->capture_default_str();
    randomize->add_option("--b", rnd_b, "offset")->capture_default_str();
    randomize->add_option("--m", rnd_m, "prime modulus")->capture_default_str();
    randomize->add_option("--scale", rnd_scale, "quantization scale (power of ten)")->capture_default_str();
    randomize->add_flag("--inverse", rnd_inverse, "apply the inverse map");
    randomize->add_option("--out", rnd_out, "output CSV")->required();

    // train
    auto* train = app.add_subcommand("train", "run one experiment (or a config matrix)");
    SpecFlags train_flags;
    std::string train_out = "report", config_path;
    add_spec_flags(train, train_flags, false);
    train->add_option("--config", config_path, "experiment matrix file");
    train->add_option("--out", train_out, "report path prefix")->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "benchmark harness")->require_subcommand(1);
    auto* volatility = bench_cmd->add_subcommand("volatility", "states {42,12} x fractions {0.33,0.30}");
    SpecFlags vol_flags;
    std::string vol_out = "volatility", vol_states = "42,12", vol_fracs = "0.33,0.30";
    add_spec_flags(volatility, vol_flags);
    volatility->add_option("--states", vol_states, "split states")->capture_default_str();
    volatility->add_option("--fractions", vol_fracs, "test fractions")->capture_default_str();
    volatility->add_option("--out", vol_out, "report path prefix")->capture_default_str();

    auto* complexity = bench_cmd->add_subcommand("complexity", "runtime scaling fits");
    std::string cx_kind = "qsvm-kernel", cx_sizes = "20,40,80,160", cx_dims = "2,3,4,5,6,7,8,9,10", cx_out = "complexity.json";
    unsigned cx_reps = 3;
    complexity->add_option("--kind", cx_kind, "qsvm-kernel | vqc-iteration | vqc-forward")->capture_default_str();
    complexity->add_option("--sizes", cx_sizes, "training-set sizes")->capture_default_str();
    complexity->add_option("--dims", cx_dims, "feature dimensions (vqc-forward)")->capture_default_str();
    complexity->add_option("--reps", cx_reps, "timing repetitions (median)")->capture_default_str();
    complexity->add_option("--out", cx_out, "output JSON")->capture_default_str();

    // report
    auto* report = app.add_subcommand("report", "render saved reports");
    std::vector<std::string> report_in;
    std::string report_format = "text", report_out;
    report->add_option("--in", report_in, "report JSON files")->required();
    report->add_option("--format", report_format, "text | json | csv")->capture_default_str();
    report->add_option("--out", report_out, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        set_default_jobs(jobs);
        if (*adhoc_gen) {
            data::AdhocShape s;
            try {
                s = data::parse_adhoc_shape(shape);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            write_dataset(data::gen_adhoc(s, adhoc_seed), adhoc_out);
        } else if (*anderson_gen) {
            const auto es = parse_axis(energies, "--energies");
            const auto vs = parse_axis(disorders, "--disorders");
            const auto ls = parse_list<unsigned>(sizes_text, "--sizes");
            if (ls.size() < 2)
                throw UsageError("--sizes needs at least two cube sizes for a slope");
            anderson::LatticeOptions opt;
            if (boundary == "periodic")
                opt.boundary = anderson::TransverseBoundary::Periodic;
            else if (boundary != "open")
                throw UsageError("--boundary must be open or periodic");
            if (n_configs < 1)
                throw UsageError("--configs must be >= 1");
            const auto map = anderson::generate_phase_map(es, vs, ls, n_configs, anderson_seed, opt, jobs);
            write_dataset(map.dataset, anderson_out);
            const std::string rp = raw_out.empty() ? anderson_out + ".raw.csv" : raw_out;
            ensure_parent(rp);
            std::ofstream raw(rp);
            if (!raw)
                throw std::runtime_error("cannot write '" + rp + "'");
            anderson::write_raw_csv(raw, map);
            emit("raw", rp);
        } else if (*covid_label) {
            data::CovidConfig cfg;
            try {
                cfg.label_date = data::Date::parse(date);
                cfg.window = window;
                cfg.threshold = threshold;
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const std::string cp = cases_path.empty() ? (fs::path(data_dir) / "us-counties.csv").string() : cases_path;
            const std::string pp =
                pop_path.empty() ? (fs::path(data_dir) / "county-population.csv").string() : pop_path;
            const auto labels = data::covid_label(data::read_case_table(cp), data::read_population_table(pp), cfg);
            const auto& st = labels.stats;
            std::cerr << "counties " << st.counties << ", included " << st.included << ", excluded: all-zero "
                      << st.excluded_all_zero << ", missing-dates " << st.excluded_missing_dates << ", non-monotone "
                      << st.excluded_non_monotone << ", conflicting " << st.excluded_conflicting
                      << "; rows without fips " << st.rows_without_fips << ", missing population "
                      << st.missing_population << '\n';
            write_dataset(labels.dataset, covid_out);
        } else if (*uci_load) {
            data::UciKind kind;
            try {
                kind = data::parse_uci_kind(uci_kind);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const std::string p = uci_path.empty()
                                      ? (fs::path(data_dir) / (kind == data::UciKind::Wdbc ? "wdbc.data" : "wine.data"))
                                            .string()
                                      : uci_path;
            write_dataset(data::load_uci(kind, p), uci_out);
        } else if (*reduce) {
            if (!(reduce_delta >= 0))
                throw UsageError("--delta must be >= 0");
            const auto ds = bench::load_dataset_ref(reduce_data, data_dir);
            const auto plane = data::fit_reduction_hyperplane(ds, reduce_C);
            const auto r = data::reduce_near_hyperplane(ds, plane, reduce_delta);
            std::cerr << "kept " << r.kept << ", dropped " << r.dropped << '\n';
            write_dataset(r.dataset, reduce_out);
        } else if (*randomize) {
            data::PRNGParams params;
            try {
                params = data::PRNGParams::make(rnd_a, rnd_b, rnd_m);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto ds = bench::load_dataset_ref(rnd_data, data_dir);
            write_dataset(data::prng_apply(ds, params,
                                           rnd_inverse ? data::PrngDirection::Inverse : data::PrngDirection::Forward,
                                           rnd_scale),
                          rnd_out);
        } else if (*train) {
            std::vector<cli::ConfigEntry> entries;
            if (!config_path.empty()) {
                try {
                    entries = cli::load_run_config(config_path).entries;
                } catch (const ParseError& e) {
                    throw UsageError(e.what());
                }
            } else {
                if (train_flags.data.empty())
                    throw UsageError("train needs --data or --config");
                entries.push_back({"train", spec_from_flags(train_flags)});
            }
            std::vector<bench::ExperimentReport> reports;
            for (std::size_t k = 0; k < entries.size(); ++k) {
                bench::RunOptions ro;
                ro.jobs = jobs;
                ro.data_dir = data_dir;
                ro.predictions_path = with_suffix(
                    train_out, entries.size() == 1 ? ".predictions.csv" : "." + std::to_string(k) + ".predictions.csv");
                ensure_parent(ro.predictions_path);
                reports.push_back(bench::run_experiment(entries[k].spec, ro));
            }
            finish_reports(reports, train_out);
        } else if (*volatility) {
            const auto spec = spec_from_flags(vol_flags);
            std::vector<double> fracs;
            for (const auto& f : parse_axis(vol_fracs, "--fractions"))
                fracs.push_back(f);
            const auto states = parse_list<std::uint64_t>(vol_states, "--states");
            const auto ds = bench::load_dataset_ref(spec.dataset, data_dir);
            bench::RunOptions ro;
            ro.jobs = jobs;
            ro.data_dir = data_dir;
            ro.predictions_path = with_suffix(vol_out, ".predictions");
            ensure_parent(ro.predictions_path);
            finish_reports(bench::volatility_matrix(spec, ds, states, fracs, ro), vol_out);
        } else if (*complexity) {
            nlohmann::json out{{"kind", cx_kind}};
            bench::ScalingSeries s;
            if (cx_kind == "qsvm-kernel") {
                s = bench::qsvm_kernel_scaling(parse_list<std::size_t>(cx_sizes, "--sizes"), 2, 1, cx_reps);
                out["fit"] = fit_json(bench::fit_power_law(s.xs, s.times));
            } else if (cx_kind == "vqc-iteration") {
                s = bench::vqc_iteration_scaling(parse_list<std::size_t>(cx_sizes, "--sizes"), 2, 4, 1, cx_reps);
                out["fit"] = fit_json(bench::fit_power_law(s.xs, s.times));
            } else if (cx_kind == "vqc-forward") {
                s = bench::vqc_forward_scaling(parse_list<unsigned>(cx_dims, "--dims"), 1, cx_reps);
                out["fit"] = fit_json(bench::fit_exponential(s.xs, s.times));
            } else {
                throw UsageError("--kind must be qsvm-kernel, vqc-iteration or vqc-forward");
            }
            ensure_parent(cx_out);
            serialize::write_text_file(cx_out, out.dump(2) + "\n");
            emit("complexity", cx_out);
        } else if (*report) {
            bench::ReportFormat fmt;
            try {
                fmt = bench::parse_report_format(report_format);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            std::vector<bench::ExperimentReport> all;
            for (const auto& p : report_in) {
                auto rs = serialize::reports_from_json(serialize::read_text_file(p));
                all.insert(all.end(), rs.begin(), rs.end());
            }
            const std::string doc = bench::render_report(all, fmt);
            if (report_out.empty()) {
                std::cout << doc;
            } else {
                ensure_parent(report_out);
                serialize::write_text_file(report_out, doc);
                emit("report", report_out);
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
