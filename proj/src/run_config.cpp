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

#include "qmlbench/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>
#include <utility>

namespace qmlbench::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T parse_num(const std::string& key, const std::string& v)
{
    T out{};
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || v.empty())
        throw std::invalid_argument("'" + key + "': cannot parse '" + v + "'");
    return out;
}

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys{
        "dataset", "test_dataset", "algorithm", "backend", "subsample", "reduce", "randomize",
        "prng_scale", "scale", "pca", "feature_range", "test_fraction", "state", "C",
        "gamma", "reps", "ansatz_depth", "iterations", "shots", "seed", "max_quantum_dim"};
    return keys;
}

struct Section {
    std::string name;
    std::size_t line = 0;
    std::vector<std::pair<std::string, std::vector<std::string>>> settings;
    std::vector<std::size_t> lines;

    void set(const std::string& key, std::vector<std::string> values, std::size_t at)
    {
        for (std::size_t i = 0; i < settings.size(); ++i)
            if (settings[i].first == key) {
                settings[i].second = std::move(values);
                lines[i] = at;
                return;
            }
        settings.emplace_back(key, std::move(values));
        lines.push_back(at);
    }
};

} // namespace

bool parse_bool(const std::string& text)
{
    std::string value = text;
    std::transform(value.begin(), value.end(), value.begin(), [](unsigned char c) { return std::tolower(c); });
    if (value == "true" || value == "yes" || value == "on" || value == "1")
        return true;
    if (value == "false" || value == "no" || value == "off" || value == "0")
        return false;
    throw std::invalid_argument("expected a boolean, got '" + text + "'");
}

void apply_setting(bench::ExperimentSpec& spec, const std::string& key, const std::string& value)
{
    if (key == "dataset")
        spec.dataset = value;
    else if (key == "test_dataset")
        spec.test_dataset = value;
    else if (key == "algorithm")
        spec.algorithm = bench::parse_algorithm(value);
    else if (key == "backend")
        spec.backend = bench::parse_backend(value);
    else if (key == "subsample")
        spec.subsample_per_class = parse_num<std::size_t>(key, value);
    else if (key == "reduce")
        spec.reduce_delta = parse_num<double>(key, value);
    else if (key == "randomize") {
        if (value == "none" || value == "false") {
            spec.randomize.reset();
        } else if (value == "default" || value == "true") {
            spec.randomize = data::PRNGParams::make(7919, 13, 104729);
        } else {
            const auto parts = split_list(value, ':');
            if (parts.size() != 3)
                throw std::invalid_argument("'randomize' expects a:b:m, 'default' or 'none'");
            spec.randomize = data::PRNGParams::make(parse_num<std::int64_t>(key, parts[0]),
                                                    parse_num<std::int64_t>(key, parts[1]),
                                                    parse_num<std::int64_t>(key, parts[2]));
        }
    } else if (key == "prng_scale")
        spec.prng_scale = parse_num<std::int64_t>(key, value);
    else if (key == "scale")
        spec.scale = parse_bool(value);
    else if (key == "pca") {
        if (value == "none")
            spec.pca_dim.reset();
        else
            spec.pca_dim = parse_num<unsigned>(key, value);
    } else if (key == "feature_range") {
        const auto parts = split_list(value, ':');
        if (parts.size() != 2)
            throw std::invalid_argument("'feature_range' expects lo:hi");
        spec.feature_range = {parse_num<double>(key, parts[0]), parse_num<double>(key, parts[1])};
    } else if (key == "test_fraction")
        spec.test_fraction = parse_num<double>(key, value);
    else if (key == "state")
        spec.state = parse_num<std::uint64_t>(key, value);
    else if (key == "C")
        spec.C = parse_num<double>(key, value);
    else if (key == "gamma")
        spec.gamma = parse_num<double>(key, value);
    else if (key == "reps")
        spec.reps = parse_num<unsigned>(key, value);
    else if (key == "ansatz_depth")
        spec.ansatz_depth = parse_num<unsigned>(key, value);
    else if (key == "iterations")
        spec.vqc_iterations = parse_num<unsigned>(key, value);
    else if (key == "shots")
        spec.shots = parse_num<std::uint64_t>(key, value);
    else if (key == "seed")
        spec.seed = parse_num<std::uint64_t>(key, value);
    else if (key == "max_quantum_dim")
        spec.max_quantum_dim = parse_num<unsigned>(key, value);
    else
        throw std::invalid_argument("unknown key '" + key + "'");
}

RunConfig parse_run_config(std::istream& in, const std::string& source)
{
    Section defaults;
    std::vector<Section> sections;
    Section* current = &defaults;
    std::string line;
    std::size_t lineno = 0;
    auto where = [&](std::size_t at) { return source + ":" + std::to_string(at) + ": "; };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty())
            continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ParseError(where(lineno) + "unterminated section header");
            const std::string head = trim(body.substr(1, body.size() - 2));
            if (head == "defaults") {
                current = &defaults;
                continue;
            }
            std::string name = head;
            if (head.rfind("experiment", 0) == 0)
                name = trim(head.substr(10));
            if (name.empty())
                name = "experiment" + std::to_string(sections.size() + 1);
            sections.push_back(Section{name, lineno, {}, {}});
            current = &sections.back();
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError(where(lineno) + "expected key = value");
        const std::string key = trim(body.substr(0, eq));
        if (!known_keys().count(key))
            throw ParseError(where(lineno) + "unknown key '" + key + "'");
        auto values = split_list(body.substr(eq + 1), ',');
        if (std::any_of(values.begin(), values.end(), [](const std::string& v) { return v.empty(); }))
            throw ParseError(where(lineno) + "empty value for '" + key + "'");
        current->set(key, std::move(values), lineno);
    }
    if (sections.empty())
        throw ParseError(source + ": no experiment sections");

    RunConfig cfg;
    for (const auto& sec : sections) {
        Section merged = defaults;
        for (std::size_t i = 0; i < sec.settings.size(); ++i)
            merged.set(sec.settings[i].first, sec.settings[i].second, sec.lines[i]);
        if (std::none_of(merged.settings.begin(), merged.settings.end(),
                         [](const auto& kv) { return kv.first == "dataset"; }))
            throw ParseError(where(sec.line) + "section '" + sec.name + "' has no dataset");

        // Cartesian product with the last key varying fastest.
        std::vector<std::size_t> idx(merged.settings.size(), 0);
        bool done = false;
        while (!done) {
            bench::ExperimentSpec spec;
            bool backend_set = false;
            std::string label = sec.name;
            // Algorithm first so the default backend follows it.
            for (std::size_t k = 0; k < merged.settings.size(); ++k)
                if (merged.settings[k].first == "algorithm") {
                    try {
                        apply_setting(spec, "algorithm", merged.settings[k].second[idx[k]]);
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(where(merged.lines[k]) + e.what());
                    }
                }
            for (std::size_t k = 0; k < merged.settings.size(); ++k) {
                const auto& [key, values] = merged.settings[k];
                if (key == "backend")
                    backend_set = true;
                try {
                    apply_setting(spec, key, values[idx[k]]);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(where(merged.lines[k]) + e.what());
                }
                if (values.size() > 1)
                    label += "/" + key + "=" + values[idx[k]];
            }
            if (!backend_set)
                spec.backend = bench::default_backend(spec.algorithm);
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw ParseError(where(sec.line) + "section '" + label + "': " + e.what());
            }
            cfg.entries.push_back({label, spec});

            std::size_t k = merged.settings.size();
            while (true) {
                if (k == 0) {
                    done = true;
                    break;
                }
                --k;
                if (++idx[k] < merged.settings[k].second.size())
                    break;
                idx[k] = 0;
            }
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config '" + path + "'");
    return parse_run_config(in, path);
}

} // namespace qmlbench::cli
