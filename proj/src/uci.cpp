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

#include "qmlbench/uci.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qmlbench::data {

namespace {

const std::array<const char*, 10> kWdbcBase = {"radius",      "texture",   "perimeter",      "area",
                                               "smoothness",  "compactness", "concavity",    "concave_points",
                                               "symmetry",    "fractal_dimension"};

const std::vector<std::string> kWineNames = {"alcohol",         "malic_acid",    "ash",
                                             "alcalinity_of_ash", "magnesium",   "total_phenols",
                                             "flavanoids",      "nonflavanoid_phenols", "proanthocyanins",
                                             "color_intensity", "hue",           "od280_od315",
                                             "proline"};

std::vector<std::string> wdbc_names()
{
    std::vector<std::string> names;
    for (const char* suffix : {"mean", "se", "worst"})
        for (const char* base : kWdbcBase)
            names.push_back(std::string(base) + "_" + suffix);
    return names;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

double parse_real(const std::string& cell, const std::string& where)
{
    double v;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError(where + ": cannot parse '" + cell + "' as a number");
    return v;
}

} // namespace

UciKind parse_uci_kind(const std::string& name)
{
    if (name == "wdbc" || name == "breast-cancer")
        return UciKind::Wdbc;
    if (name == "wine")
        return UciKind::Wine;
    throw std::invalid_argument("unknown UCI data set '" + name + "' (expected wdbc or wine)");
}

Dataset load_uci(UciKind kind, std::istream& in, const std::string& source)
{
    const std::size_t n_features = kind == UciKind::Wdbc ? 30 : 13;
    const std::size_t n_cols = kind == UciKind::Wdbc ? 32 : 14;
    const std::size_t first_feature = n_cols - n_features;

    std::vector<double> values;
    std::vector<int> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = source + ":" + std::to_string(lineno);
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(trim(cell));
        if (cells.size() != n_cols)
            throw ParseError(where + ": expected " + std::to_string(n_cols) + " columns, found " +
                             std::to_string(cells.size()));

        if (kind == UciKind::Wdbc) {
            if (cells[1] == "B")
                labels.push_back(0);
            else if (cells[1] == "M")
                labels.push_back(1);
            else
                throw ParseError(where + ": unknown diagnosis '" + cells[1] + "'");
        } else {
            if (cells[0] == "1" || cells[0] == "2" || cells[0] == "3")
                labels.push_back(cells[0][0] - '1');
            else
                throw ParseError(where + ": unknown class '" + cells[0] + "'");
        }
        for (std::size_t c = first_feature; c < n_cols; ++c)
            values.push_back(parse_real(cells[c], where));
    }
    if (labels.empty())
        throw ParseError(source + ": no data rows");

    Matrix X(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(n_features));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < n_features; ++j)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * n_features + j];
    return Dataset::make(kind == UciKind::Wdbc ? "wdbc" : "wine", std::move(X), std::move(labels),
                         kind == UciKind::Wdbc ? wdbc_names() : kWineNames);
}

Dataset load_uci(UciKind kind, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open UCI file '" + path + "'");
    return load_uci(kind, in, path);
}

} // namespace qmlbench::data
