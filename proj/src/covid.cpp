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

#include "qmlbench/covid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmlbench::data {

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    // NYT county names never contain quoted commas, but strip quotes anyway.
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

template <class T>
bool parse_number(const std::string& s, T& out)
{
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t column(const std::vector<std::string>& header, const std::string& name, const std::string& source)
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ParseError(source + ":1: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

Date Date::parse(const std::string& iso)
{
    Date d;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !parse_number(iso.substr(0, 4), d.year) ||
        !parse_number(iso.substr(5, 2), d.month) || !parse_number(iso.substr(8, 2), d.day) || d.month < 1 ||
        d.month > 12 || d.day < 1 || d.day > 31)
        throw std::invalid_argument("invalid ISO date '" + iso + "'");
    if (from_days(d.days()) != d)
        throw std::invalid_argument("invalid calendar date '" + iso + "'");
    return d;
}

std::string Date::iso() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

// Civil-from-days conversions (proleptic Gregorian).
std::int64_t Date::days() const
{
    const std::int64_t y = year - (month <= 2 ? 1 : 0);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t m = month;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date Date::from_days(std::int64_t z)
{
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    const std::int64_t y = yoe + era * 400 + (m <= 2 ? 1 : 0);
    return {static_cast<int>(y), static_cast<int>(m), static_cast<int>(d)};
}

void CovidConfig::validate() const
{
    if (window < 1)
        throw std::invalid_argument("COVID window must be >= 1 day");
    if (!(threshold > 0))
        throw std::invalid_argument("COVID threshold must be positive");
}

CaseTable read_case_table(std::istream& in, const std::string& source)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source + ": empty file");
    const auto header = split_csv(line);
    const std::size_t c_date = column(header, "date", source);
    const std::size_t c_fips = column(header, "fips", source);
    const std::size_t c_cases = column(header, "cases", source);

    CaseTable table;
    std::set<std::int64_t> conflicted;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split_csv(line);
        const std::string where = source + ":" + std::to_string(lineno);
        if (cells.size() != header.size())
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " columns, found " +
                             std::to_string(cells.size()));
        ++table.rows;
        std::int64_t fips;
        if (!parse_number(cells[c_fips], fips)) {
            ++table.rows_without_fips;
            continue;
        }
        std::int64_t count;
        if (!parse_number(cells[c_cases], count))
            throw ParseError(where + ": cannot parse case count '" + cells[c_cases] + "'");
        Date d;
        try {
            d = Date::parse(cells[c_date]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(where + ": " + e.what());
        }
        auto& series = table.cases[fips];
        auto [it, inserted] = series.emplace(d.days(), count);
        if (!inserted && it->second != count)
            conflicted.insert(fips);
    }
    table.conflicting_rows = conflicted.size();
    table.conflicted_fips.assign(conflicted.begin(), conflicted.end());
    return table;
}

CaseTable read_case_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open case table '" + path + "'");
    return read_case_table(in, path);
}

std::map<std::int64_t, double> read_population_table(std::istream& in, const std::string& source)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source + ": empty file");
    const auto header = split_csv(line);
    const std::size_t c_fips = column(header, "fips", source);
    const std::size_t c_pop = column(header, "population", source);
    std::map<std::int64_t, double> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split_csv(line);
        const std::string where = source + ":" + std::to_string(lineno);
        if (cells.size() != header.size())
            throw ParseError(where + ": expected " + std::to_string(header.size()) + " columns");
        std::int64_t fips;
        double pop;
        if (!parse_number(cells[c_fips], fips) || !parse_number(cells[c_pop], pop))
            throw ParseError(where + ": cannot parse fips/population");
        out[fips] = pop;
    }
    return out;
}

std::map<std::int64_t, double> read_population_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open population table '" + path + "'");
    return read_population_table(in, path);
}

CovidLabels covid_label(const CaseTable& cases, const std::map<std::int64_t, double>& population,
                        const CovidConfig& config)
{
    config.validate();
    const std::int64_t end = config.label_date.days();
    const std::int64_t start = end - config.window;
    const std::set<std::int64_t> conflicted(cases.conflicted_fips.begin(), cases.conflicted_fips.end());

    CovidLabels out;
    out.stats.rows_without_fips = cases.rows_without_fips;
    std::vector<double> feats;
    std::vector<int> labels;
    for (const auto& [fips, series] : cases.cases) {
        ++out.stats.counties;
        if (conflicted.count(fips)) {
            ++out.stats.excluded_conflicting;
            continue;
        }
        std::vector<std::int64_t> window;
        bool missing = false;
        for (std::int64_t day = start; day <= end; ++day) {
            auto it = series.find(day);
            if (it == series.end()) {
                missing = true;
                break;
            }
            window.push_back(it->second);
        }
        if (missing) {
            ++out.stats.excluded_missing_dates;
            continue;
        }
        if (std::all_of(window.begin(), window.end(), [](std::int64_t c) { return c == 0; })) {
            ++out.stats.excluded_all_zero;
            continue;
        }
        if (!std::is_sorted(window.begin(), window.end())) {
            ++out.stats.excluded_non_monotone;
            continue;
        }
        auto pop = population.find(fips);
        if (pop == population.end()) {
            ++out.stats.missing_population;
            std::cerr << "warning: no population for fips " << fips << "; county dropped\n";
            continue;
        }
        const double derivative = static_cast<double>(window.back() - window.front()) / config.window;
        feats.push_back(pop->second);
        feats.push_back(static_cast<double>(window.back()));
        labels.push_back(derivative <= config.threshold ? 1 : 0);
        out.fips.push_back(fips);
        out.derivatives.push_back(derivative);
    }
    out.stats.included = labels.size();

    Matrix X(static_cast<Eigen::Index>(labels.size()), 2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        X(static_cast<Eigen::Index>(i), 0) = feats[2 * i];
        X(static_cast<Eigen::Index>(i), 1) = feats[2 * i + 1];
    }
    out.dataset = Dataset::make("covid-" + config.label_date.iso(), std::move(X), std::move(labels),
                                {"population", "cases"});
    out.dataset.metadata["label_date"] = config.label_date.iso();
    out.dataset.metadata["window"] = std::to_string(config.window);
    out.dataset.metadata["threshold"] = format_number(config.threshold);
    return out;
}

} // namespace qmlbench::data
