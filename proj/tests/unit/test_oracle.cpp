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
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "steerlp/errors.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/oracle.hpp"

using namespace steerlp;

TEST_CASE("strategy enumeration is mixed radix with setting 0 least significant") {
    const auto s = enumerate_strategies(3, 2);
    REQUIRE(s.size() == 8);
    CHECK(s[1].outcome == std::vector<int>{1, 0, 0});
    CHECK(s[6].outcome == std::vector<int>{0, 1, 1});
    CHECK(s[6](1, 2) == 1);
    CHECK(s[6](0, 2) == 0);
    CHECK(strategy_count(20, 2) == (1u << 20));
    CHECK_THROWS_AS(strategy_count(21, 2), CapExceededError);
    CHECK_THROWS_AS(strategy_count(3, 3, 26), CapExceededError);
}

TEST_CASE("closed-form qubit robustness values") {
    const double tol = 1e-6;
    CHECK(exact_robustness(planar_measurements(PlanarAngles({0.0}))).eta >= 1.0 - tol);
    CHECK(std::abs(exact_robustness(planar_measurements(PlanarAngles({0.0, std::numbers::pi / 2}))).eta -
                   1.0 / std::sqrt(2.0)) < tol);
    CHECK(std::abs(exact_robustness(planar_measurements(
                                        PlanarAngles({0.0, std::numbers::pi / 3, 2 * std::numbers::pi / 3})))
                       .eta -
                   2.0 / 3.0) < tol);
}

TEST_CASE("measurement and assemblage forms agree") {
    const MeasurementSet m = random_povm(3, 2, 3, 5);
    const double a = exact_robustness(m).eta;
    const double b = exact_robustness(assemblage_from_measurements(m)).eta;
    CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("qutrit oracle on two MUBs") {
    std::vector<std::vector<HermitianOperator>> el;
    const auto mubs = mub_vectors(3);
    for (int x = 0; x < 2; ++x) {
        std::vector<HermitianOperator> row;
        for (const auto& v : mubs[x]) row.push_back(HermitianOperator::projector(v));
        el.push_back(row);
    }
    // Known value for a pair of MUBs: (1 + 1/(sqrt(d) + 1)) / 2; d = 2 gives 1/sqrt(2).
    const OracleResult r = exact_robustness(MeasurementSet(el));
    CHECK(r.status == LpStatus::Optimal);
    CHECK(std::abs(r.eta - 0.5 * (1.0 + 1.0 / (std::sqrt(3.0) + 1.0))) < 1e-6);
}
