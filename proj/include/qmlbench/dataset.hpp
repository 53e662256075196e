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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::data {

/// Feature matrix plus integer labels; the unit passed between generators,
/// preprocessing and classifiers.
struct Dataset {
    std::string name;
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    std::map<std::string, std::string> metadata;

    std::size_t size() const { return labels.size(); }
    Eigen::Index dims() const { return features.cols(); }

    /// Throws if labels and rows disagree or names are the wrong length.
    void validate() const;

    /// Rows at `indices`, in that order.
    Dataset subset(std::span<const std::size_t> indices) const;

    /// Sorted distinct labels.
    std::vector<int> classes() const;

    static Dataset make(std::string name, Matrix features, std::vector<int> labels,
                        std::vector<std::string> feature_names = {});
};

std::vector<std::string> default_feature_names(Eigen::Index d);

/// CSV with header `<feature names>,label`, one row per point.
void write_csv(std::ostream& out, const Dataset& ds);
void write_csv(const std::string& path, const Dataset& ds);

/// Reads the format produced by write_csv. The last column is the label.
Dataset read_csv(std::istream& in, const std::string& name = "dataset");
Dataset read_csv_file(const std::string& path);

std::string format_number(double v);

} // namespace qmlbench::data
