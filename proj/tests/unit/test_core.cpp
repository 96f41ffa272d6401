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
#include "steerlp/polytope.hpp"
#include "steerlp/quantum.hpp"
#include "steerlp/rng.hpp"

using namespace steerlp;

namespace {

MatrixXcd random_hermitian(int d, Rng& rng) {
    MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    return 0.5 * (g + g.adjoint());
}

// Tr_A by explicit index sums.
MatrixXcd brute_partial_trace_a(const MatrixXcd& rho, int da, int db) {
    MatrixXcd out = MatrixXcd::Zero(db, db);
    for (int b1 = 0; b1 < db; ++b1)
        for (int b2 = 0; b2 < db; ++b2)
            for (int i = 0; i < da; ++i) out(b1, b2) += rho(i * db + b1, i * db + b2);
    return out;
}

MatrixXcd brute_partial_trace_b(const MatrixXcd& rho, int da, int db) {
    MatrixXcd out = MatrixXcd::Zero(da, da);
    for (int a1 = 0; a1 < da; ++a1)
        for (int a2 = 0; a2 < da; ++a2)
            for (int j = 0; j < db; ++j) out(a1, a2) += rho(a1 * db + j, a2 * db + j);
    return out;
}

} // namespace

TEST_CASE("coordinates are orthonormal for the trace inner product") {
    Rng rng(3);
    for (int d : {2, 3, 4}) {
        const MatrixXcd a = random_hermitian(d, rng);
        const MatrixXcd b = random_hermitian(d, rng);
        const double tr = (a * b).trace().real();
        CHECK(std::abs(basis::coords(a).dot(basis::coords(b)) - tr) < 1e-12);
        CHECK(max_abs_diff(basis::from_coords(basis::coords(a), d), a) < 1e-13);
        CHECK(std::abs(basis::coords(MatrixXcd::Identity(d, d))(0) - std::sqrt(static_cast<double>(d))) < 1e-13);
    }
}

TEST_CASE("hermitian operator symmetrises its input and reports spectra") {
    MatrixXcd m(2, 2);
    m << 1.0, cplx(0.0, 1.0), cplx(0.0, -1.0), -1.0;
    const HermitianOperator h(m);
    CHECK(std::abs(h.max_eigenvalue() - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(h.min_eigenvalue() + std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(h.trace()) < 1e-15);
    CHECK(std::abs(trace_product(h, h) - 4.0) < 1e-12);
}

TEST_CASE("partial traces agree with index sums") {
    Rng rng(11);
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
        const HermitianOperator rho = random_state(da * db, rng);
        CHECK(max_abs_diff(partial_trace_a(rho.matrix(), da, db), brute_partial_trace_a(rho.matrix(), da, db)) <
              1e-14);
        CHECK(max_abs_diff(partial_trace_b(rho.matrix(), da, db), brute_partial_trace_b(rho.matrix(), da, db)) <
              1e-14);
    }
}

TEST_CASE("maximally entangled state has maximally mixed marginals") {
    const BipartiteState phi = BipartiteState::maximally_entangled(3);
    CHECK(max_abs_diff(phi.reduced_b().matrix(), MatrixXcd::Identity(3, 3) / 3.0) < 1e-14);
    CHECK(validate(phi).pass());
}

TEST_CASE("depolarize keeps the trace and mixes towards identity") {
    const HermitianOperator p = bloch_state({0.0, 0.0, 1.0});
    const HermitianOperator q = depolarize(p, 0.5);
    CHECK(std::abs(q.trace() - 1.0) < 1e-15);
    CHECK(std::abs(bloch_vector(q)[2] - 0.5) < 1e-14);
    CHECK_THROWS_AS(depolarize(p, 0.5, 3), ValidationError);
}

TEST_CASE("validation reports raw violations") {
    MeasurementSet ok = fibonacci_qubit(5);
    CHECK(validate(ok).pass());
    std::vector<std::vector<HermitianOperator>> el{{bloch_state({0, 0, 1}) * 1.1, bloch_state({0, 0, -1})}};
    const ValidationReport rep = validate(MeasurementSet(el));
    CHECK_FALSE(rep.pass());
    CHECK(rep.violation("completeness") > 0.09);
    CHECK_THROWS_AS(require_valid(MeasurementSet(el)), ValidationError);
}

TEST_CASE("assemblage from measurements is no-signalling with reduced state 1/d") {
    const Assemblage a = assemblage_from_measurements(fibonacci_qutrit(4));
    CHECK(validate(a).pass());
    CHECK(max_abs_diff(a.reduced().matrix(), MatrixXcd::Identity(3, 3) / 3.0) < 1e-14);
}

TEST_CASE("assemblage from the maximally entangled state is the transposed POVM over d") {
    const MeasurementSet m = random_projective(3, 2, 5);
    const Assemblage a = assemblage_from_state(BipartiteState::maximally_entangled(2), m);
    for (int x = 0; x < 3; ++x)
        for (int ao = 0; ao < 2; ++ao)
            CHECK(max_abs_diff(a(ao, x).matrix(), m(ao, x).transpose().matrix() / 2.0) < 1e-14);
}

TEST_CASE("shape errors are validation errors") {
    std::vector<std::vector<HermitianOperator>> ragged{{HermitianOperator::identity(2)},
                                                       {HermitianOperator::identity(2), HermitianOperator::zero(2)}};
    CHECK_THROWS_AS(MeasurementSet{ragged}, ValidationError);
}
