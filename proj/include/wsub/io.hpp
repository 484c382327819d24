// Copyright 2026 The wsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wsub/analysis.hpp"
#include "wsub/common.hpp"
#include "wsub/dataset.hpp"
#include "wsub/objective.hpp"
#include "wsub/restricted_solver.hpp"
#include "wsub/trace.hpp"

namespace wsub {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// CSV: one observation per row, last column is y, optional header row. Labels
// that are all 0/1 are read as binary01, anything else as real.
Dataset<double> read_csv(std::istream& in, bool header,
                         std::optional<LabelEncoding> encoding = std::nullopt);
Dataset<double> read_csv_file(const std::string& path, bool header,
                              std::optional<LabelEncoding> encoding = std::nullopt);
void write_csv(std::ostream& out, const Dataset<double>& data, bool header);
void write_csv_file(const std::string& path, const Dataset<double>& data,
                    bool header);

Json to_json(const ObjectiveSpec& spec);
ObjectiveSpec objective_from_json(const Json& j);
Json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const Json& j);
Json to_json(const ParamVector<double>& beta);

/// {"schema_version": 1, "kind": "selection_trace", ...}
Json trace_to_json(const SelectionTrace<double>& trace);
SelectionTrace<double> trace_from_json(const Json& j);

/// {"schema_version": 1, "kind": "analysis_report", ...}
Json report_to_json(const AnalysisReport<double>& report);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace wsub
