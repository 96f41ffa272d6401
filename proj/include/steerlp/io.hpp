// Copyright 2026 The steerlp Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "steerlp/oracle.hpp"
#include "steerlp/polytope.hpp"
#include "steerlp/quantum.hpp"
#include "steerlp/robustness.hpp"

namespace steerlp::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = STEERLP_VERSION;

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
json to_json(const HermitianOperator& a);
HermitianOperator operator_from_json(const json& j);

/// {"d", "k", "m", "elements": [[matrix x k] x m]}.
json to_json(const MeasurementSet& m);
MeasurementSet measurements_from_json(const json& j);
json to_json(const Assemblage& a);
Assemblage assemblage_from_json(const json& j);

/// {"d", "kind", "planar", "vertices", "facets"?: [{"F", "b"}], "r"?,
/// "critical"?, "provenance"}. Loading re-checks the vertex invariants.
json to_json(const StatePolytope& p);
StatePolytope polytope_from_json(const json& j);

json to_json(const RobustnessResult& r);
json to_json(const OracleResult& r);

/// Reads and parses a JSON file; IoError on failure.
json read_json(const std::filesystem::path& path);
/// Writes with two-space indentation; IoError on failure.
void write_json(const std::filesystem::path& path, const json& j);

/// 64-bit FNV-1a of the compact serialisation (object keys sorted), as 16 hex digits.
std::string config_hash(const json& config);

/// Run-log row; the column order is fixed.
struct CsvRow {
    std::string family;
    int d = 0;
    int k = 0;
    int m = 0;
    std::string polytope_id;
    double r = 0.0;
    std::string method;
    double lower = 0.0;
    double upper = 0.0;
    double exact = 0.0;
    double runtime_s = 0.0;
    std::int64_t seed = -1;
};

std::string csv_header();
/// Doubles with 17 significant digits; NaN prints as an empty field.
std::string csv_line(const CsvRow& row);
/// Appends rows. A new or empty file first receives `meta` as a '#' comment
/// line (when non-empty) and the header.
void append_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows, const std::string& meta = {});
/// Overwrites the file with the optional comment line, header and rows.
void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows, const std::string& meta = {});

/// Formats with 17 significant digits (round-trip exact).
std::string format_double(double v);

} // namespace steerlp::io
