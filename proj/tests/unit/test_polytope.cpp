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
#include <array>
#include <cmath>
#include <numbers>

#include "steerlp/errors.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/polytope.hpp"
#include "steerlp/rng.hpp"

using namespace steerlp;

namespace {

// Distinct Bloch vectors of Gaussian-integer qubit vectors with squared norm <= q.
std::size_t brute_qubit_count(int q) {
    std::vector<std::array<double, 3>> seen;
    const int b = static_cast<int>(std::sqrt(static_cast<double>(q)));
    for (int a1 = -b; a1 <= b; ++a1)
        for (int b1 = -b; b1 <= b; ++b1)
            for (int a2 = -b; a2 <= b; ++a2)
                for (int b2 = -b; b2 <= b; ++b2) {
                    const int n = a1 * a1 + b1 * b1 + a2 * a2 + b2 * b2;
                    if (n == 0 || n > q) continue;
                    VectorXcd v(2);
                    v << cplx(a1, b1), cplx(a2, b2);
                    const auto r = bloch_vector(HermitianOperator::projector(v));
                    const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& s) {
                        return std::abs(s[0] - r[0]) + std::abs(s[1] - r[1]) + std::abs(s[2] - r[2]) < 1e-9;
                    });
                    if (!dup) seen.push_back(r);
                }
    return seen.size();
}

// Inradius of the Bloch polyhedron from the facet planes.
double bloch_inradius(const StatePolytope& p) {
    double best = 1e300;
    for (const auto& f : p.facets()) {
        const auto n = bloch_vector(f.normal); // Tr(F sigma_i)
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) / 2.0;
        best = std::min(best, (f.offset - f.normal.trace() / 2.0) / len);
    }
    return best;
}

void check_facet_invariants(const StatePolytope& p) {
    const int d = p.dim();
    REQUIRE(p.has_facets());
    for (const auto& f : p.facets()) {
        int tight = 0;
        for (const auto& v : p.vertices()) {
            const double val = trace_product(f.normal, v);
            CHECK(val <= f.offset + 1e-9);
            if (std::abs(val - f.offset) < 1e-7) ++tight;
        }
        CHECK(tight >= d * d - 1);
        CHECK(f.normal.trace() / d < f.offset - 1e-9);
    }
}

HermitianOperator random_pure(int d, Rng& rng) {
    VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cplx(rng.normal(), rng.normal());
    return HermitianOperator::projector(v);
}

} // namespace

TEST_CASE("rational qubit vertex counts match a brute-force enumeration") {
    for (int q = 2; q <= 10; ++q) CHECK(rational_pure_states(2, q).size() == brute_qubit_count(q));
    CHECK(rational_pure_states(2, 2).size() == 6);
    CHECK(rational_pure_states(2, 3).size() == 14);
    CHECK(rational_pure_states(3, 2).size() == 15);
}

TEST_CASE("facets satisfy the support and interior invariants") {
    check_facet_invariants(facet_enumeration(rational_pure_states(2, 5)));
    check_facet_invariants(facet_enumeration(mub_polytope(3)));
}

TEST_CASE("qubit shrinking factor equals the Bloch inradius") {
    for (int q : {2, 3, 5, 7}) {
        const StatePolytope p = analyze(rational_pure_states(2, q));
        CHECK(std::abs(*p.shrinking_factor() - bloch_inradius(p)) < 1e-12);
    }
    const StatePolytope oct = analyze(rational_pure_states(2, 2));
    CHECK(std::abs(*oct.shrinking_factor() - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(oct.critical_facets().size() == 8);
}

TEST_CASE("exact and floating-point qubit hulls agree") {
    FacetOptions ex;
    ex.exact = true;
    for (int q : {4, 8}) {
        const StatePolytope a = analyze(rational_pure_states(2, q));
        const StatePolytope b = analyze(rational_pure_states(2, q), ex);
        CHECK(a.facets().size() == b.facets().size());
        CHECK(std::abs(*a.shrinking_factor() - *b.shrinking_factor()) < 1e-12);
    }
}

TEST_CASE("shrinking factor is invariant under a global unitary") {
    Rng rng(2);
    const StatePolytope p = rational_pure_states(3, 2);
    const MatrixXcd u = haar_unitary(3, rng);
    std::vector<HermitianOperator> rotated;
    for (const auto& v : p.vertices()) rotated.emplace_back(u * v.matrix() * u.adjoint());
    const StatePolytope q(3, rotated, PolytopeKind::Inner, "rotated");
    CHECK(std::abs(*analyze(p).shrinking_factor() - *analyze(q).shrinking_factor()) < 1e-9);
}

TEST_CASE("shrunk pure states lie in the hull and the worst state just beyond r does not") {
    const StatePolytope p = analyze(rational_pure_states(2, 3));
    const double r = *p.shrinking_factor();
    Rng rng(9);
    for (int i = 0; i < 200; ++i) CHECK(ray_shoot(p, random_pure(2, rng)) >= r - 1e-7);
    // The pure state along a critical facet normal is exactly at the boundary.
    const auto& f = p.facets()[static_cast<std::size_t>(p.critical_facets().front())];
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(f.normal.matrix());
    const HermitianOperator worst = HermitianOperator::projector(es.eigenvectors().col(1));
    CHECK(std::abs(ray_shoot(p, worst) - r) < 1e-6);
    CHECK(ray_shoot(p, depolarize(worst, r + 1e-3)) < 1.0);
}

TEST_CASE("MUB polytope and its analytic shrinking factor") {
    const StatePolytope p = mub_polytope(3);
    CHECK(p.size() == 12);
    CHECK(std::abs(mub_shrinking_factor(3) - 0.25) < 1e-9);
    CHECK(std::abs(*analyze(p).shrinking_factor() - 0.25) < 1e-6);
    CHECK(std::abs(mub_shrinking_factor(2) - 1.0 / std::sqrt(3.0)) < 1e-9);
    CHECK_THROWS_AS(mub_polytope(4), ValidationError);
}

TEST_CASE("outer vertex sets contain every state") {
    const StatePolytope oct = analyze(rational_pure_states(2, 2));
    const StatePolytope out = outer_from_inner(oct);
    CHECK(out.kind() == PolytopeKind::Outer);
    for (const auto& v : out.vertices()) {
        const auto b = bloch_vector(v);
        CHECK(std::abs(std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]) - std::sqrt(3.0)) < 1e-12);
    }
    const StatePolytope mub = outer_from_inner(analyze(mub_polytope(3)));
    Rng rng(4);
    for (int i = 0; i < 200; ++i) CHECK(ray_shoot(mub, random_pure(3, rng)) >= 1.0 - 1e-7);
    CHECK_THROWS_AS(outer_from_inner(mub_polytope(3)), ValidationError);
}

TEST_CASE("refinement never decreases r and grows the vertex set") {
    const RefinementResult rr = refine_polytope(analyze(rational_pure_states(2, 2)), 2);
    REQUIRE(rr.steps.size() == 3);
    CHECK(rr.completed == 2);
    CHECK(rr.steps[0].vertices == 6);
    CHECK(rr.steps[1].vertices == 14);
    CHECK(rr.steps[2].vertices > rr.steps[1].vertices);
    CHECK(rr.steps[2].r >= rr.steps[1].r);
    CHECK(rr.steps[1].r > rr.steps[0].r);
}

TEST_CASE("sphere generators") {
    const StatePolytope sq = analyze(sphere_polytope(SphereKind::Polygon, 4));
    CHECK(sq.planar());
    CHECK(std::abs(*sq.shrinking_factor() - std::cos(std::numbers::pi / 4)) < 1e-12);
    const StatePolytope ico1 = analyze(sphere_polytope(SphereKind::Icosphere, 1));
    CHECK(ico1.size() == 42);
    CHECK(*ico1.shrinking_factor() > 0.79);
    const StatePolytope ico3 = analyze(sphere_polytope(SphereKind::Icosphere, 3));
    CHECK(ico3.size() == 642);
    CHECK(*ico3.shrinking_factor() >= 0.99);
    // The icosphere already has vertices at the poles.
    CHECK(sphere_polytope(SphereKind::Icosphere, 2, true).size() == 162);
    CHECK(sphere_polytope(SphereKind::Fibonacci, 50, true).size() == 52);
    CHECK_THROWS_AS(sphere_polytope(SphereKind::Fibonacci, 3), ValidationError);
}

TEST_CASE("hierarchy sizing") {
    const HierarchySize a = hierarchy_size(3, 2);
    CHECK(a.n == 7);
    CHECK(std::abs(a.r_lower - 0.125) < 1e-14);
    const HierarchySize b = hierarchy_size(4, 2);
    CHECK(b.n == 13);
    CHECK(std::abs(b.r_lower - (2.0 * std::pow(std::cos(std::numbers::pi / 8), 4) - 1.0)) < 1e-14);
    CHECK(hierarchy_size(3, 3).n == 31);
    CHECK_THROWS_AS(hierarchy_size(2, 2), ValidationError);
}

TEST_CASE("vertex invariants are enforced on construction") {
    std::vector<HermitianOperator> v{bloch_state({0, 0, 1}) * 0.9};
    CHECK_THROWS_WITH_AS(StatePolytope(2, v, PolytopeKind::Inner, "bad"), doctest::Contains("vertex 0"),
                         ValidationError);
    std::vector<HermitianOperator> neg{bloch_state({0, 0, 1.5})};
    CHECK_THROWS_AS(StatePolytope(2, neg, PolytopeKind::Inner, "bad"), ValidationError);
    CHECK_NOTHROW(StatePolytope(2, neg, PolytopeKind::Outer, "ok"));
}
