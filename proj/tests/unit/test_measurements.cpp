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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steerlp/errors.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/polytope.hpp"

using namespace steerlp;

TEST_CASE("Fibonacci qubit axes") {
    const auto a = fibonacci_qubit_axis(2, 0);
    CHECK(std::abs(a[2] - 1.0) < 1e-15);
    const auto b = fibonacci_qubit_axis(2, 1);
    const double phi = std::numbers::pi * (std::sqrt(5.0) - 1.0);
    CHECK(std::abs(b[0] - std::cos(phi)) < 1e-15);
    CHECK(std::abs(b[1] - std::sin(phi)) < 1e-15);
    CHECK(std::abs(b[2]) < 1e-15);
    const MeasurementSet m = fibonacci_qubit(37);
    for (int x = 0; x < m.count(); ++x) {
        const auto r = bloch_vector(m(0, x));
        CHECK(std::abs(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) - 1.0) < 1e-12);
    }
    CHECK(validate(m).pass());
    CHECK_THROWS_AS(fibonacci_qubit(1), ValidationError);
}

TEST_CASE("Fibonacci qutrit measurements are projective and complete") {
    const MeasurementSet m = fibonacci_qutrit(11);
    const ValidationReport rep = validate(m);
    CHECK(rep.pass());
    for (int x = 0; x < m.count(); ++x)
        for (int a = 0; a < 3; ++a) {
            const MatrixXcd p = m(a, x).matrix();
            CHECK(max_abs_diff(p * p, p) < 1e-12);
            CHECK(std::abs(m(a, x).trace() - 1.0) < 1e-12);
        }
}

TEST_CASE("planar angles are normalised relative to the first axis") {
    const PlanarAngles a({0.3, 0.3 + std::numbers::pi, 1.3});
    REQUIRE(a.values().size() == 2);
    CHECK(a.values()[0] == 0.0);
    CHECK(std::abs(a.values()[1] - 1.0) < 1e-12);
    CHECK_THROWS_AS(PlanarAngles({}), ValidationError);
}

TEST_CASE("planar bound closed forms") {
    CHECK(std::abs(planar_bound(PlanarAngles({0.0})) - 1.0) < 1e-15);
    CHECK(std::abs(planar_bound(PlanarAngles({0.0, std::numbers::pi / 2})) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(planar_bound(PlanarAngles({0.0, std::numbers::pi / 3, 2 * std::numbers::pi / 3})) - 2.0 / 3.0) <
          1e-15);
    CHECK(std::abs(planar_bound(PlanarAngles({0.7, 0.7, 0.7})) - 1.0) < 1e-15);
    const double p1 = planar_bound(PlanarAngles({0.1, 2.0, 0.9, 1.4}));
    const double p2 = planar_bound(PlanarAngles({1.4, 0.9, 2.0, 0.1}));
    CHECK(std::abs(p1 - p2) < 1e-14);
    const MeasurementSet m = planar_measurements(PlanarAngles({0.0, std::numbers::pi / 2}));
    CHECK(std::abs(bloch_vector(m(0, 1))[0] - 1.0) < 1e-15);
}

TEST_CASE("random generators are deterministic and valid") {
    const MeasurementSet a = random_projective(5, 2, 42);
    const MeasurementSet b = random_projective(5, 2, 42);
    for (int x = 0; x < 5; ++x)
        for (int o = 0; o < 2; ++o) CHECK(a(o, x).matrix() == b(o, x).matrix());
    CHECK(validate(a).pass());
    const MeasurementSet p = random_povm(6, 2, 4, 3);
    const MeasurementSet q = random_povm(6, 2, 4, 3);
    for (int x = 0; x < 6; ++x)
        for (int o = 0; o < 4; ++o) CHECK(p(o, x).matrix() == q(o, x).matrix());
    const ValidationReport rep = validate(p);
    CHECK(rep.pass());
    CHECK(rep.violation("completeness") < 1e-10);
    for (int x = 0; x < 6; ++x) {
        CHECK(linearly_independent(p, x));
        for (int o = 0; o < 4; ++o) CHECK(p(o, x).eigenvalues().minCoeff() > -1e-12);
    }
    CHECK(validate(random_povm(3, 3, 9, 1)).pass());
    CHECK_THROWS_AS(random_povm(2, 2, 5, 0), ValidationError);
    CHECK_THROWS_AS(random_povm(2, 2, 1, 0), ValidationError);
}

TEST_CASE("Haar unitaries are unitary") {
    Rng rng(8);
    for (int d : {2, 4, 7}) {
        const MatrixXcd u = haar_unitary(d, rng);
        CHECK(max_abs_diff(u * u.adjoint(), MatrixXcd::Identity(d, d)) < 1e-13);
    }
}
