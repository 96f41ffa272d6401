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

#include "steerlp/conic.hpp"
#include "steerlp/hermitian.hpp"
#include "steerlp/rng.hpp"

using namespace steerlp;
using namespace steerlp::conic;

namespace {

SparseMatrix sparse(const MatrixXd& m) { return m.sparseView(); }

VectorXd interior_point(const ConeLayout& k, Rng& rng) {
    VectorXd x(k.size());
    int off = 0;
    for (int i = 0; i < k.orthant; ++i) x(off++) = 0.5 + rng.uniform();
    for (int n : k.soc) {
        double norm = 0.0;
        for (int i = 1; i < n; ++i) {
            x(off + i) = rng.normal();
            norm += x(off + i) * x(off + i);
        }
        x(off) = std::sqrt(norm) + 0.3 + rng.uniform();
        off += n;
    }
    for (int d : k.psd) {
        MatrixXcd g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
        const MatrixXcd p = g * g.adjoint() + 0.2 * MatrixXcd::Identity(d, d);
        x.segment(off, d * d) = basis::coords(p);
        off += d * d;
    }
    return x;
}

} // namespace

TEST_CASE("linear program with a known optimum") {
    // min -x1 - 2 x2  s.t. x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6, all >= 0; optimum (3, 1) -> -5.
    MatrixXd a(2, 4);
    a << 1, 1, 1, 0, 1, 3, 0, 1;
    ConicProblem p{sparse(a), VectorXd::Zero(2), VectorXd::Zero(4), ConeLayout{4, {}, {}}};
    p.b << 4, 6;
    p.c << -1, -2, 0, 0;
    const ConicSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(std::abs(s.primal_objective + 5.0) < 1e-7);
    CHECK(std::abs(s.x(0) - 3.0) < 1e-6);
    CHECK(std::abs(s.x(1) - 1.0) < 1e-6);
}

TEST_CASE("second-order cone: smallest t with t >= |(3, 4)|") {
    MatrixXd a = MatrixXd::Zero(2, 3);
    a(0, 1) = 1.0;
    a(1, 2) = 1.0;
    ConicProblem p{sparse(a), VectorXd(2), VectorXd::Zero(3), ConeLayout{0, {3}, {}}};
    p.b << 3, 4;
    p.c(0) = 1.0;
    const ConicSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(std::abs(s.primal_objective - 5.0) < 1e-7);
}

TEST_CASE("PSD block: min Tr(C X) over unit-trace X is lambda_min(C)") {
    Rng rng(5);
    for (int d : {2, 3}) {
        MatrixXcd g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
        const MatrixXcd c = 0.5 * (g + g.adjoint());
        MatrixXd a(1, d * d);
        a.row(0) = basis::coords(MatrixXcd::Identity(d, d)).transpose();
        ConicProblem p{sparse(a), VectorXd::Ones(1), basis::coords(c), ConeLayout{0, {}, {d}}};
        const ConicSolution s = solve(p);
        REQUIRE(s.status == SolveStatus::Optimal);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(c);
        CHECK(std::abs(s.primal_objective - es.eigenvalues()(0)) < 1e-7);
    }
}

TEST_CASE("infeasible and unbounded problems are detected") {
    MatrixXd a(1, 1);
    a << 1;
    ConicProblem inf{sparse(a), VectorXd::Constant(1, -1.0), VectorXd::Ones(1), ConeLayout{1, {}, {}}};
    CHECK(solve(inf).status == SolveStatus::PrimalInfeasible);
    MatrixXd a2(1, 2);
    a2 << 1, -1;
    ConicProblem unb{sparse(a2), VectorXd::Zero(1), VectorXd::Constant(2, -1.0), ConeLayout{2, {}, {}}};
    CHECK(solve(unb).status == SolveStatus::DualInfeasible);
}

TEST_CASE("Nesterov-Todd scaling identities") {
    Rng rng(17);
    const ConeLayout k{3, {3, 4}, {2, 3}};
    const VectorXd x = interior_point(k, rng);
    const VectorXd s = interior_point(k, rng);
    const Scaling w(k, x, s);
    const VectorXd l1 = w.apply_w(s);
    const VectorXd l2 = w.apply_w_inv_t(x);
    CHECK((l1 - w.lambda()).norm() < 1e-9 * (1.0 + l1.norm()));
    CHECK((l2 - w.lambda()).norm() < 1e-9 * (1.0 + l2.norm()));
    CHECK((w.apply_h(s) - x).norm() < 1e-8 * (1.0 + x.norm()));
    // lambda o (lambda \ r) = r
    const VectorXd r = interior_point(k, rng);
    CHECK((w.product(w.lambda(), w.divide(r)) - r).norm() < 1e-8 * (1.0 + r.norm()));
    CHECK(min_cone_eigenvalue(k, w.identity()) > 0.99);
    CHECK(k.degree() == 3 + 2 + 5);
}
