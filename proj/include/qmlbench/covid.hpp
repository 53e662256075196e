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

// County "safe"/"unsafe" labels from cumulative case curves.
//
// For each county (keyed by FIPS) the mean daily increase over the `window`
// days ending at `label_date` is compared against `threshold`: at or below
// is safe (1), above is unsafe (0). Features are (population, cases on the
// label date).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qmlbench/dataset.hpp"

namespace qmlbench::data {

struct Date {
    int year = 2020;
    int month = 5;
    int day = 8;

    static Date parse(const std::string& iso); // YYYY-MM-DD
    std::string iso() const;
    /// Days since 1970-01-01.
    std::int64_t days() const;
    static Date from_days(std::int64_t days);
    Date plus(std::int64_t n) const { return from_days(days() + n); }

    auto operator<=>(const Date&) const = default;
};

struct CovidConfig {
    Date label_date{2020, 5, 8};
    int window = 3;
    double threshold = 5.0;

    void validate() const;
};

/// Cumulative counts per county, from the NYT county table.
struct CaseTable {
    std::map<std::int64_t, std::map<std::int64_t, std::int64_t>> cases; // fips -> day -> cumulative
    std::size_t rows = 0;
    std::size_t rows_without_fips = 0;
    std::size_t conflicting_rows = 0;
    std::vector<std::int64_t> conflicted_fips;
};

/// `date,county,state,fips,cases,deaths`; columns located by header name.
CaseTable read_case_table(std::istream& in, const std::string& source = "cases");
CaseTable read_case_table(const std::string& path);

/// `fips,population`
std::map<std::int64_t, double> read_population_table(std::istream& in, const std::string& source = "population");
std::map<std::int64_t, double> read_population_table(const std::string& path);

struct CovidStats {
    std::size_t counties = 0;
    std::size_t included = 0;
    std::size_t excluded_all_zero = 0;
    std::size_t excluded_missing_dates = 0;
    std::size_t excluded_non_monotone = 0;
    std::size_t excluded_conflicting = 0;
    std::size_t rows_without_fips = 0;
    std::size_t missing_population = 0;
};

struct CovidLabels {
    Dataset dataset;
    std::vector<std::int64_t> fips; // row order of dataset
    std::vector<double> derivatives;
    CovidStats stats;
};

CovidLabels covid_label(const CaseTable& cases, const std::map<std::int64_t, double>& population,
                        const CovidConfig& config);

} // namespace qmlbench::data
