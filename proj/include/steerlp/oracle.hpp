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
#include <vector>

#include "steerlp/conic.hpp"
#include "steerlp/quantum.hpp"
#include "steerlp/robustness.hpp"

namespace steerlp {

inline constexpr std::uint64_t kDefaultStrategyCap = std::uint64_t{1} << 20;

/// Deterministic response function: outcome[x] is the outcome for setting x.
struct DeterministicStrategy {
    std::uint64_t index = 0;
    std::vector<int> outcome;

    [[nodiscard]] int operator()(int a, int x) const { return outcome[x] == a ? 1 : 0; }
};

/// Number of deterministic strategies k^m; throws CapExceededError above cap.
std::uint64_t strategy_count(int m, int k, std::uint64_t cap = kDefaultStrategyCap);

/// All k^m strategies in mixed-radix order: index = sum_x outcome[x] k^x.
std::vector<DeterministicStrategy> enumerate_strategies(int m, int k, std::uint64_t cap = kDefaultStrategyCap);

struct OracleOptions {
    std::uint64_t cap = kDefaultStrategyCap;
    conic::SolverOptions solver;
};

struct OracleResult {
    double eta = 0.0;
    LpStatus status = LpStatus::Failed;
    int iterations = 0;
    std::uint64_t strategies = 0;
    double wall_time_s = 0.0;
};

/// Exact depolarizing robustness of sigma(eta) = eta * slope + offset: one
/// conic variable per deterministic strategy (second-order cone for d = 2,
/// Hermitian PSD block otherwise).
OracleResult exact_robustness(const LinearAssemblage& family, const OracleOptions& opt = {});
/// Steering robustness of an assemblage.
OracleResult exact_robustness(const Assemblage& a, const OracleOptions& opt = {});
/// Incompatibility robustness, posed directly on the POVM elements.
OracleResult exact_robustness(const MeasurementSet& m, const OracleOptions& opt = {});

} // namespace steerlp
