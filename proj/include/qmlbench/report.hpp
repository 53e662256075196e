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

#include <string>
#include <vector>

#include "qmlbench/bench.hpp"

namespace qmlbench::bench {

enum class ReportFormat { TextTable, Json, Csv };

ReportFormat parse_report_format(const std::string& name); // text, json, csv

/// Percent with two decimals, trailing zeros trimmed down to one decimal:
/// 75 -> "75.0", 72.2222 -> "72.22".
std::string format_accuracy(double percent);

/// Columns: Algorithm, Backend, Time (seconds, rounded), Accuracy,
/// Only one class. Rows keep input order. JSON is a full report array.
std::string render_report(const std::vector<ExperimentReport>& reports, ReportFormat format);

} // namespace qmlbench::bench
