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

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "steerlp/measurements.hpp"
#include "steerlp/polytope.hpp"
#include "steerlp/quantum.hpp"

namespace steerlp::tools {

/// Polytope spec: BASE[+MOD...] with BASE one of rational:D:Q, mub:D,
/// icosphere:L, fibonacci:N, polygon:N or a .json file, and MOD one of poles,
/// refine=S, outer. Generated polytopes carry facets and r.
StatePolytope make_polytope(const std::string& spec, const std::filesystem::path& workdir,
                            const FacetOptions& opt = {});

/// fibonacci-qubit:M, fibonacci-qutrit:M, planar:A1,A2,..., mub:D,
/// random-projective:M:D:SEED, random-povm:M:D:K:SEED or a .json file.
MeasurementSet make_measurements(const std::string& spec, const std::filesystem::path& workdir);

/// max-entangled:D, werner:V, random:DA:DB:SEED, product:SEED or a .json
/// file {"dA", "dB", "rho": matrix}.
BipartiteState make_state(const std::string& spec, const std::filesystem::path& workdir);

std::vector<std::string> split(const std::string& s, char sep);

/// Worker count from STEERLP_WORKERS (default 1).
int workers_from_env();

/// Runs the tasks on `workers` threads; results keep task order.
template <class T>
std::vector<T> run_parallel(const std::vector<std::function<T()>>& tasks, int workers);

} // namespace steerlp::tools

#include "specs_impl.hpp"
