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

#include "qmlbench/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace qmlbench {

namespace {

json matrix_json(const Matrix& M)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from(const json& j, Eigen::Index cols_if_empty = 0)
{
    const auto rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : cols_if_empty;
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError("ragged matrix in JSON");
        for (Eigen::Index c = 0; c < cols; ++c)
            M(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return M;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from(const json& j)
{
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <class T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace

namespace data {

void to_json(json& j, const PRNGParams& p) { j = json{{"a", p.a}, {"b", p.b}, {"m", p.m}, {"a_inv", p.a_inv}}; }

void from_json(const json& j, PRNGParams& p)
{
    p = PRNGParams::make(j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("m").get<std::int64_t>());
}

} // namespace data

namespace bench {

void to_json(json& j, const ExperimentSpec& s)
{
    j = json{{"algorithm", algorithm_name(s.algorithm)},
             {"backend", backend_name(s.backend)},
             {"dataset", s.dataset},
             {"test_dataset", opt(s.test_dataset)},
             {"subsample_per_class", opt(s.subsample_per_class)},
             {"reduce_delta", opt(s.reduce_delta)},
             {"randomize", s.randomize ? json(*s.randomize) : json(nullptr)},
             {"prng_scale", s.prng_scale},
             {"scale", s.scale},
             {"pca_dim", opt(s.pca_dim)},
             {"feature_range", {s.feature_range.first, s.feature_range.second}},
             {"test_fraction", s.test_fraction},
             {"state", s.state},
             {"C", s.C},
             {"gamma", opt(s.gamma)},
             {"reps", s.reps},
             {"ansatz_depth", s.ansatz_depth},
             {"vqc_iterations", s.vqc_iterations},
             {"shots", s.shots},
             {"seed", s.seed},
             {"max_quantum_dim", s.max_quantum_dim}};
}

void from_json(const json& j, ExperimentSpec& s)
{
    s = ExperimentSpec{};
    s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    s.backend = j.contains("backend") ? parse_backend(j.at("backend").get<std::string>()) : default_backend(s.algorithm);
    s.dataset = j.value("dataset", std::string{});
    s.test_dataset = opt_from<std::string>(j, "test_dataset");
    s.subsample_per_class = opt_from<std::size_t>(j, "subsample_per_class");
    s.reduce_delta = opt_from<double>(j, "reduce_delta");
    if (j.contains("randomize") && !j.at("randomize").is_null())
        s.randomize = j.at("randomize").get<data::PRNGParams>();
    s.prng_scale = j.value("prng_scale", s.prng_scale);
    s.scale = j.value("scale", s.scale);
    s.pca_dim = opt_from<unsigned>(j, "pca_dim");
    if (j.contains("feature_range")) {
        const auto r = j.at("feature_range").get<std::vector<double>>();
        if (r.size() != 2)
            throw ParseError("feature_range must have two entries");
        s.feature_range = {r[0], r[1]};
    }
    s.test_fraction = j.value("test_fraction", s.test_fraction);
    s.state = j.value("state", s.state);
    s.C = j.value("C", s.C);
    s.gamma = opt_from<double>(j, "gamma");
    s.reps = j.value("reps", s.reps);
    s.ansatz_depth = j.value("ansatz_depth", s.ansatz_depth);
    s.vqc_iterations = j.value("vqc_iterations", s.vqc_iterations);
    s.shots = j.value("shots", s.shots);
    s.seed = j.value("seed", s.seed);
    s.max_quantum_dim = j.value("max_quantum_dim", s.max_quantum_dim);
}

void to_json(json& j, const ExperimentReport& r)
{
    j = json{{"spec", r.spec},
             {"wall_time_seconds", r.wall_time_seconds},
             {"accuracy_percent", r.accuracy_percent},
             {"one_class", r.one_class},
             {"train_size", r.train_size},
             {"test_size", r.test_size},
             {"predictions_path", r.predictions_path}};
}

void from_json(const json& j, ExperimentReport& r)
{
    r = ExperimentReport{};
    r.spec = j.at("spec").get<ExperimentSpec>();
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.accuracy_percent = j.at("accuracy_percent").get<double>();
    r.one_class = j.at("one_class").get<bool>();
    r.train_size = j.at("train_size").get<std::size_t>();
    r.test_size = j.at("test_size").get<std::size_t>();
    r.predictions_path = j.value("predictions_path", std::string{});
}

} // namespace bench

namespace svm {

void to_json(json& j, const TrainedSVM& m)
{
    j = json{{"kernel", kernel_name(m.kernel.kind)},
             {"gamma", m.kernel.gamma},
             {"support_vectors", matrix_json(m.support_vectors)},
             {"support_indices", m.support_indices},
             {"dual_coefs", vector_json(m.dual_coefs)},
             {"bias", m.bias},
             {"C", m.C},
             {"classes", {m.classes[0], m.classes[1]}},
             {"iterations", m.iterations},
             {"objective", m.objective}};
    if (m.weights)
        j["weights"] = vector_json(*m.weights);
}

void from_json(const json& j, TrainedSVM& m)
{
    m = TrainedSVM{};
    const auto kind = j.at("kernel").get<std::string>();
    if (kind == kernel_name(KernelKind::Linear))
        m.kernel = KernelSpec::linear();
    else if (kind == kernel_name(KernelKind::RBF))
        m.kernel = KernelSpec::rbf(j.at("gamma").get<double>());
    else if (kind == kernel_name(KernelKind::Precomputed))
        m.kernel = KernelSpec::precomputed();
    else
        throw ParseError("unknown kernel '" + kind + "' in model JSON");
    m.support_vectors = matrix_from(j.at("support_vectors"));
    m.support_indices = j.value("support_indices", std::vector<std::size_t>{});
    m.dual_coefs = vector_from(j.at("dual_coefs"));
    m.bias = j.at("bias").get<double>();
    m.C = j.value("C", 1.0);
    const auto cls = j.at("classes").get<std::vector<int>>();
    if (cls.size() != 2)
        throw ParseError("model JSON needs two classes");
    m.classes = {cls[0], cls[1]};
    if (j.contains("weights"))
        m.weights = vector_from(j.at("weights"));
    m.iterations = j.value("iterations", std::size_t{0});
    m.objective = j.value("objective", 0.0);
}

} // namespace svm

namespace vqc {

void to_json(json& j, const VQCSpec& s)
{
    j = json{{"dimension", s.dimension},
             {"reps", s.feature_map.reps},
             {"entanglement", "linear"},
             {"ansatz_depth", s.ansatz_depth},
             {"max_iterations", s.max_iterations},
             {"gains",
              {{"a", s.gains.a},
               {"c", s.gains.c},
               {"alpha", s.gains.alpha},
               {"gamma", s.gains.gamma},
               {"stability_fraction", s.gains.stability_fraction}}},
             {"shots", opt(s.shots)}};
}

void from_json(const json& j, VQCSpec& s)
{
    s = VQCSpec::for_dimension(j.at("dimension").get<unsigned>());
    s.feature_map.reps = j.value("reps", s.feature_map.reps);
    s.ansatz_depth = j.value("ansatz_depth", s.ansatz_depth);
    s.max_iterations = j.value("max_iterations", s.max_iterations);
    if (j.contains("gains")) {
        const auto& g = j.at("gains");
        s.gains.a = g.value("a", s.gains.a);
        s.gains.c = g.value("c", s.gains.c);
        s.gains.alpha = g.value("alpha", s.gains.alpha);
        s.gains.gamma = g.value("gamma", s.gains.gamma);
        s.gains.stability_fraction = g.value("stability_fraction", s.gains.stability_fraction);
    }
    s.shots = opt_from<std::uint64_t>(j, "shots");
    s.validate();
}

} // namespace vqc

namespace serialize {

namespace {

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

template <class F>
auto guarded(F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON document: ") + e.what());
    }
}

} // namespace

std::string reports_to_json(const std::vector<bench::ExperimentReport>& reports, int indent)
{
    return json(reports).dump(indent) + "\n";
}

std::vector<bench::ExperimentReport> reports_from_json(const std::string& text)
{
    const json j = parse(text);
    return guarded([&] {
        if (j.is_array())
            return j.get<std::vector<bench::ExperimentReport>>();
        return std::vector<bench::ExperimentReport>{j.get<bench::ExperimentReport>()};
    });
}

std::string vqc_model_to_json(const vqc::VQCSpec& spec, const vqc::VQCParams& params)
{
    return json{{"spec", spec}, {"theta", params.theta}}.dump(2) + "\n";
}

std::pair<vqc::VQCSpec, vqc::VQCParams> vqc_model_from_json(const std::string& text)
{
    const json j = parse(text);
    return guarded([&] {
        auto spec = j.at("spec").get<vqc::VQCSpec>();
        vqc::VQCParams p{j.at("theta").get<std::vector<double>>()};
        if (p.theta.size() != spec.parameter_count())
            throw ParseError("theta length does not match the VQC spec");
        return std::make_pair(spec, p);
    });
}

std::string svm_model_to_json(const svm::TrainedSVM& model) { return json(model).dump(2) + "\n"; }

svm::TrainedSVM svm_model_from_json(const std::string& text)
{
    const json j = parse(text);
    return guarded([&] { return j.get<svm::TrainedSVM>(); });
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace serialize

} // namespace qmlbench
