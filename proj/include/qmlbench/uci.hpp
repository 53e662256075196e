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

#include <iosfwd>
#include <string>

#include "qmlbench/dataset.hpp"

namespace qmlbench::data {

enum class UciKind { Wdbc, Wine };

UciKind parse_uci_kind(const std::string& name);

/// Standard UCI comma-separated layouts:
///   wdbc: id, diagnosis (M/B), 30 reals -> labels B=0, M=1
///   wine: class (1-3), 13 reals         -> labels 0, 1, 2
/// Malformed rows raise ParseError naming the line.
Dataset load_uci(UciKind kind, std::istream& in, const std::string& source = "input");
Dataset load_uci(UciKind kind, const std::string& path);

} // namespace qmlbench::data
