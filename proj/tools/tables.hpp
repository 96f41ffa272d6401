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

#include <string>
#include <vector>

#include "steerlp/io.hpp"
#include "steerlp/measurements.hpp"

namespace steerlp::tools {

struct TableOptions {
    int workers = 1;
    /// Largest m for which the exact oracle runs; negative picks the table default.
    int oracle_max = -1;
    /// Write NaN runtimes so repeated runs are byte-identical.
    bool runtime = true;
    LpOptions lp;
    FacetOptions facet;
    std::uint64_t strategy_cap = kDefaultStrategyCap;
};

/// table2, table3, table4, table5, fig3, fig4, fig5, planar.
const std::vector<std::string>& table_names();

/// Angle set number `seed` of the planar sweep: m uniform in [2, 50], angles uniform in [0, pi).
PlanarAngles random_planar_angles(std::uint64_t seed);

std::vector<io::CsvRow> run_table(const std::string& name, const TableOptions& opt);

} // namespace steerlp::tools
