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
#include <functional>

#include "specs.hpp"
#include "steerlp/errors.hpp"
#include "tables.hpp"

using namespace steerlp;
using namespace steerlp::tools;

TEST_CASE("polytope specs") {
    const StatePolytope a = make_polytope("rational:2:3", ".");
    CHECK(a.size() == 14);
    CHECK(std::abs(*a.shrinking_factor() - std::sqrt(0.5)) < 1e-9);
    const StatePolytope b = make_polytope("mub:3+refine=1", ".");
    CHECK(b.size() == 21);
    CHECK(make_polytope("fibonacci:20+poles", ".").size() == 22);
    CHECK(make_polytope("rational:2:2+outer", ".").kind() == PolytopeKind::Outer);
    CHECK_THROWS_AS(make_polytope("cube:3", "."), ValidationError);
    CHECK_THROWS_AS(make_polytope("rational:2", "."), ValidationError);
    CHECK_THROWS_AS(make_polytope("rational:2:x", "."), ValidationError);
    CHECK_THROWS_AS(make_polytope("rational:2:2+spin", "."), ValidationError);
    CHECK_THROWS_AS(make_polytope("nothere.json", "."), IoError);
}

TEST_CASE("measurement and state specs") {
    CHECK(make_measurements("fibonacci-qutrit:9", ".").count() == 9);
    CHECK(make_measurements("planar:0,0.5,1", ".").count() == 3);
    CHECK(make_measurements("random-povm:4:2:4:1", ".").outcomes() == 4);
    CHECK(make_measurements("mub:3", ".").count() == 4);
    CHECK(make_state("werner:0.3", ".").dim_a() == 2);
    CHECK(validate(make_state("random:2:3:4", ".")).pass());
    CHECK_THROWS_AS(make_state("ghz:3", "."), ValidationError);
}

TEST_CASE("parallel runner keeps task order and propagates errors") {
    std::vector<std::function<int()>> tasks;
    for (int i = 0; i < 20; ++i) tasks.push_back([i] { return i * i; });
    CHECK(run_parallel(tasks, 4) == run_parallel(tasks, 1));
    tasks.push_back([]() -> int { throw ValidationError("boom"); });
    CHECK_THROWS_AS(run_parallel(tasks, 3), ValidationError);
}

TEST_CASE("table runs are independent of the worker count") {
    TableOptions one;
    one.runtime = false;
    TableOptions three = one;
    three.workers = 3;
    const auto a = run_table("table5", one);
    const auto b = run_table("table5", three);
    REQUIRE(a.size() == 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(io::csv_line(a[i]) == io::csv_line(b[i]));
    CHECK_THROWS_AS(run_table("table9", one), ValidationError);
}

TEST_CASE("planar sweep angle sets are reproducible") {
    const auto a = random_planar_angles(12);
    const auto b = random_planar_angles(12);
    CHECK(a.values() == b.values());
    CHECK(a.values().size() <= 50);
}
