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
#include "steerlp/oracle.hpp"
#include "steerlp/robustness.hpp"

using namespace steerlp;

namespace {

const StatePolytope& octahedron() {
    static const StatePolytope p = analyze(rational_pure_states(2, 2));
    return p;
}

const StatePolytope& fine_qubit() {
    static const StatePolytope p = analyze(sphere_polytope(SphereKind::Icosphere, 2, true));
    return p;
}

MeasurementSet mub_measurements(int d) {
    std::vector<std::vector<HermitianOperator>> el;
    for (const auto& b : mub_vectors(d)) {
        std::vector<HermitianOperator> row;
        for (const auto& v : b) row.push_back(HermitianOperator::projector(v));
        el.push_back(row);
    }
    return MeasurementSet(el);
}

// max over vertices of sum_x max_a Tr(Y_{a|x} v)
double lhs_value(const SteeringCertificate& c, const StatePolytope& p) {
    double best = -1e300;
    for (const auto& v : p.vertices()) {
        double s = 0.0;
        for (const auto& yx : c.y) {
            double m = -1e300;
            for (const auto& y : yx) m = std::max(m, trace_product(y, v));
            s += m;
        }
        best = std::max(best, s);
    }
    return best;
}

} // namespace

TEST_CASE("a single measurement is compatible") {
    std::vector<std::vector<HermitianOperator>> el{{bloch_state({0, 0, 1}), bloch_state({0, 0, -1})}};
    const RobustnessResult r = measurement_robustness(MeasurementSet(el), octahedron());
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.eta_tilde >= 1.0 - 1e-7);
}

TEST_CASE("qubit MUB on the octahedron") {
    const RobustnessResult r = measurement_robustness(mub_measurements(2), octahedron());
    CHECK(std::abs(r.eta_tilde - 1.0 / 3.0) < 1e-7);
    CHECK(std::abs(r.lower - 1.0 / 3.0) < 1e-7);
    CHECK(std::abs(r.upper - 1.0 / std::sqrt(3.0)) < 1e-7);
    CHECK(std::abs(r.r_used - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK_FALSE(r.upper_only);
}

TEST_CASE("dense and structured normal equations agree") {
    LpOptions dense;
    dense.normal = NormalMethod::Dense;
    for (const auto& m : {fibonacci_qubit(12), random_povm(4, 2, 3, 1)}) {
        const double a = measurement_robustness(m, fine_qubit()).eta_tilde;
        const double b = measurement_robustness(m, fine_qubit(), dense).eta_tilde;
        CHECK(std::abs(a - b) < 1e-7);
    }
    const StatePolytope mub = analyze(mub_polytope(3));
    const double a = measurement_robustness(fibonacci_qutrit(5), mub).eta_tilde;
    const double b = measurement_robustness(fibonacci_qutrit(5), mub, dense).eta_tilde;
    CHECK(std::abs(a - b) < 1e-7);
}

TEST_CASE("bracket contains the exact value") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const MeasurementSet m = random_projective(3, 2, seed);
        const double exact = exact_robustness(m).eta;
        for (const StatePolytope* p : {&octahedron(), &fine_qubit()}) {
            const RobustnessResult r = measurement_robustness(m, *p);
            CHECK(r.lower <= exact + 1e-6);
            CHECK(exact <= r.upper + 1e-6);
        }
    }
}

TEST_CASE("the dual certificate separates and its LHS bound is attained") {
    const RobustnessResult r = measurement_robustness(fibonacci_qubit(6), octahedron());
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->separates);
    CHECK(std::abs(lhs_value(*r.certificate, octahedron()) - r.certificate->lhs_bound) < 1e-9);
}

TEST_CASE("outer vertex sets give upper-only results") {
    const StatePolytope out = outer_from_inner(octahedron());
    const RobustnessResult r = measurement_robustness(mub_measurements(2), out);
    CHECK(r.upper_only);
    CHECK(r.lower == 0.0);
    CHECK(r.upper >= 1.0 / std::sqrt(3.0) - 1e-7);
}

TEST_CASE("assemblage outside the vertex span is rejected") {
    const StatePolytope planar = analyze(sphere_polytope(SphereKind::Polygon, 8));
    CHECK_THROWS_AS(measurement_robustness(mub_measurements(2), planar), ValidationError);
    CHECK_NOTHROW(measurement_robustness(planar_measurements(PlanarAngles({0.0, 1.0})), planar));
}

TEST_CASE("bracket helper") {
    const auto [lo, hi] = bracket(0.5, 0.5);
    CHECK(lo == 0.5);
    CHECK(hi == 1.0);
    CHECK_THROWS_AS(bracket(0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(bracket(0.5, 1.5), ValidationError);
}

TEST_CASE("LP results are bitwise reproducible") {
    const auto a = measurement_robustness(random_povm(5, 2, 4, 11), fine_qubit());
    const auto b = measurement_robustness(random_povm(5, 2, 4, 11), fine_qubit());
    CHECK(a.eta_tilde == b.eta_tilde);
    CHECK(a.upper == b.upper);
}

TEST_CASE("steering bounds for the maximally entangled state") {
    const BipartiteState phi = BipartiteState::maximally_entangled(2);
    const NoiseModel noise = NoiseModel::local_white(phi);
    const RobustnessResult up =
        state_upper_bound(phi, mub_measurements(2), outer_from_inner(octahedron()), noise);
    CHECK(up.upper >= 1.0 / std::sqrt(3.0) - 1e-6);
    CHECK(up.upper <= 1.0 + 1e-6);
    const MeasurementSet dense = fibonacci_qubit(20);
    const double mu = measurement_shrinking_factor(dense);
    const RobustnessResult lo = state_lower_bound(phi, dense, mu, fine_qubit(), noise);
    const RobustnessResult up2 = state_upper_bound(phi, dense, outer_from_inner(fine_qubit()), noise);
    CHECK(lo.lower <= 0.5 + 1e-6);
    CHECK(lo.lower > 0.3);
    CHECK(lo.lower <= up2.upper);
    CHECK(up2.upper < 0.6);
    CHECK_THROWS_AS(state_upper_bound(phi, dense, fine_qubit(), noise), ValidationError);
}

TEST_CASE("noise models") {
    const BipartiteState phi = BipartiteState::maximally_entangled(2);
    CHECK_NOTHROW(NoiseModel::local_white(phi).validate());
    const NoiseModel g = NoiseModel::global_white(2, 3);
    CHECK(std::abs(g.target.trace() - 1.0) < 1e-14);
    NoiseModel bad = g;
    bad.target = bad.target * 2.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}
