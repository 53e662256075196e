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

#include "qmlbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qmlbench/serialize.hpp"

namespace qmlbench::bench {

ReportFormat parse_report_format(const std::string& name)
{
    if (name == "text" || name == "text-table" || name == "table")
        return ReportFormat::TextTable;
    if (name == "json")
        return ReportFormat::Json;
    if (name == "csv")
        return ReportFormat::Csv;
    throw std::invalid_argument("unknown report format '" + name + "' (text, json, csv)");
}

std::string format_accuracy(double percent)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", percent);
    std::string s = buf;
    if (s.size() >= 2 && s.back() == '0')
        s.pop_back();
    return s;
}

namespace {

std::string format_time(double seconds) { return std::to_string(std::llround(seconds)); }

const char* flag(bool v) { return v ? "True" : "False"; }

} // namespace

std::string render_report(const std::vector<ExperimentReport>& reports, ReportFormat format)
{
    if (reports.empty())
        throw std::invalid_argument("render_report: no reports");
    std::ostringstream out;
    switch (format) {
    case ReportFormat::Json:
        return serialize::reports_to_json(reports);
    case ReportFormat::Csv:
        out << "Algorithm,Backend,Time,Accuracy,Only one class\n";
        for (const auto& r : reports)
            out << algorithm_name(r.spec.algorithm) << ',' << backend_name(r.spec.backend) << ','
                << format_time(r.wall_time_seconds) << ',' << format_accuracy(r.accuracy_percent) << ','
                << flag(r.one_class) << '\n';
        return out.str();
    case ReportFormat::TextTable: {
        const std::vector<std::string> header{"Algorithm", "Backend", "Time (s)", "Accuracy", "Only one class"};
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : reports)
            rows.push_back({algorithm_name(r.spec.algorithm), backend_name(r.spec.backend),
                            format_time(r.wall_time_seconds), format_accuracy(r.accuracy_percent), flag(r.one_class)});
        std::vector<std::size_t> width;
        for (const auto& h : header)
            width.push_back(h.size());
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                width[c] = std::max(width[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c)
                    out << " | ";
                out << cells[c];
                if (c + 1 < cells.size())
                    out << std::string(width[c] - cells[c].size(), ' ');
            }
            out << '\n';
        };
        line(header);
        for (std::size_t c = 0; c < width.size(); ++c)
            out << (c ? "-+-" : "") << std::string(width[c], '-');
        out << '\n';
        for (const auto& row : rows)
            line(row);
        return out.str();
    }
    }
    return out.str();
}

} // namespace qmlbench::bench
