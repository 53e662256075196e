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

#include "qmlbench/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmlbench::data {

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep))
        out.push_back(cur);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void Dataset::validate() const
{
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw std::invalid_argument("dataset '" + name + "': " + std::to_string(features.rows()) + " rows but " +
                                    std::to_string(labels.size()) + " labels");
    if (!feature_names.empty() && static_cast<Eigen::Index>(feature_names.size()) != features.cols())
        throw std::invalid_argument("dataset '" + name + "': feature name count does not match columns");
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const
{
    Dataset out;
    out.name = name;
    out.feature_names = feature_names;
    out.metadata = metadata;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
    out.labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= labels.size())
            throw std::out_of_range("Dataset::subset: index out of range");
        out.features.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(indices[r]));
        out.labels.push_back(labels[indices[r]]);
    }
    return out;
}

std::vector<int> Dataset::classes() const
{
    std::set<int> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
}

Dataset Dataset::make(std::string name, Matrix features, std::vector<int> labels, std::vector<std::string> feature_names)
{
    Dataset ds;
    ds.name = std::move(name);
    if (feature_names.empty())
        feature_names = default_feature_names(features.cols());
    ds.feature_names = std::move(feature_names);
    ds.features = std::move(features);
    ds.labels = std::move(labels);
    ds.validate();
    return ds;
}

std::vector<std::string> default_feature_names(Eigen::Index d)
{
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < d; ++i)
        names.push_back("f" + std::to_string(i));
    return names;
}

std::string format_number(double v)
{
    // Shortest representation that round-trips.
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("format_number failed");
    return {buf, ptr};
}

void write_csv(std::ostream& out, const Dataset& ds)
{
    ds.validate();
    const auto names = ds.feature_names.empty() ? default_feature_names(ds.dims()) : ds.feature_names;
    for (const auto& n : names)
        out << n << ',';
    out << "label\n";
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.features.cols(); ++j)
            out << format_number(ds.features(i, j)) << ',';
        out << ds.labels[static_cast<std::size_t>(i)] << '\n';
    }
}

void write_csv(const std::string& path, const Dataset& ds)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(out, ds);
}

Dataset read_csv(std::istream& in, const std::string& name)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(name + ": empty file");
    auto header = split(trim(line), ',');
    if (header.size() < 2 || trim(header.back()) != "label")
        throw ParseError(name + ":1: header must end with a 'label' column");
    header.pop_back();
    for (auto& h : header)
        h = trim(h);
    const std::size_t d = header.size();

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != d + 1)
            throw ParseError(name + ":" + std::to_string(lineno) + ": expected " + std::to_string(d + 1) +
                             " columns, found " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < d; ++c) {
            const std::string cell = trim(cells[c]);
            double v;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw ParseError(name + ":" + std::to_string(lineno) + ": cannot parse '" + cell + "' as a number");
            values.push_back(v);
        }
        const std::string lab = trim(cells[d]);
        int l;
        auto [ptr, ec] = std::from_chars(lab.data(), lab.data() + lab.size(), l);
        if (ec != std::errc() || ptr != lab.data() + lab.size())
            throw ParseError(name + ":" + std::to_string(lineno) + ": cannot parse label '" + lab + "'");
        labels.push_back(l);
    }

    Matrix X(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * d + j];
    return Dataset::make(name, std::move(X), std::move(labels), std::move(header));
}

Dataset read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open dataset '" + path + "'");
    return read_csv(in, std::filesystem::path(path).stem().string());
}

} // namespace qmlbench::data
