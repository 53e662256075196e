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

// JSON forms of specs, reports and trained models.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmlbench/bench.hpp"
#include "qmlbench/prng.hpp"
#include "qmlbench/svm.hpp"
#include "qmlbench/vqc.hpp"

namespace qmlbench::data {
void to_json(nlohmann::json& j, const PRNGParams& p);
void from_json(const nlohmann::json& j, PRNGParams& p);
} // namespace qmlbench::data

namespace qmlbench::bench {
void to_json(nlohmann::json& j, const ExperimentSpec& s);
void from_json(const nlohmann::json& j, ExperimentSpec& s);
/// {spec, wall_time_seconds, accuracy_percent, one_class, train_size,
///  test_size, predictions_path}
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);
} // namespace qmlbench::bench

namespace qmlbench::svm {
void to_json(nlohmann::json& j, const TrainedSVM& m);
void from_json(const nlohmann::json& j, TrainedSVM& m);
} // namespace qmlbench::svm

namespace qmlbench::vqc {
void to_json(nlohmann::json& j, const VQCSpec& s);
void from_json(const nlohmann::json& j, VQCSpec& s);
} // namespace qmlbench::vqc

namespace qmlbench::serialize {

std::string reports_to_json(const std::vector<bench::ExperimentReport>& reports, int indent = 2);
/// Accepts either an array of reports or a single report object.
std::vector<bench::ExperimentReport> reports_from_json(const std::string& text);

/// {"spec": ..., "theta": [...]}
std::string vqc_model_to_json(const vqc::VQCSpec& spec, const vqc::VQCParams& params);
std::pair<vqc::VQCSpec, vqc::VQCParams> vqc_model_from_json(const std::string& text);

std::string svm_model_to_json(const svm::TrainedSVM& model);
svm::TrainedSVM svm_model_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace qmlbench::serialize
