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
#include "steerlp/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steerlp/errors.hpp"
#include "steerlp/polytope.hpp"

namespace steerlp {

namespace {

const double kSpiral = std::numbers::pi * (std::sqrt(5.0) - 1.0);

std::vector<HermitianOperator> dichotomic(const std::array<double, 3>& n) {
    const HermitianOperator p = bloch_state(n);
    return {p, HermitianOperator::identity(2) - p};
}

} // namespace

PlanarAngles::PlanarAngles(std::vector<double> angles) {
    if (angles.empty()) throw ValidationError("at least one planar angle is required");
    for (double& a : angles) {
        if (!std::isfinite(a)) throw ValidationError("planar angles must be finite");
        a = std::fmod(a, std::numbers::pi);
        if (a < 0) a += std::numbers::pi;
        if (a >= std::numbers::pi - 1e-12) a = 0.0;
    }
    std::sort(angles.begin(), angles.end());
    const double first = angles.front();
    for (double a : angles) {
        const double s = a - first;
        if (a_.empty() || s - a_.back() > 1e-12) a_.push_back(s);
    }
    if (a_.size() > 1 && std::numbers::pi - a_.back() <= 1e-12) a_.pop_back();
}

std::array<double, 3> fibonacci_qubit_axis(int m, int x) {
    if (m < 2) throw ValidationError("Fibonacci measurements need m >= 2");
    if (x < 0 || x >= m) throw ValidationError("measurement index out of range");
    const double z = 1.0 - static_cast<double>(x) / (m - 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(x * kSpiral), r * std::sin(x * kSpiral), z};
}

MeasurementSet fibonacci_qubit(int m) {
    std::vector<std::vector<HermitianOperator>> el;
    for (int x = 0; x < m; ++x) el.push_back(dichotomic(fibonacci_qubit_axis(m, x)));
    return MeasurementSet(std::move(el));
}

MeasurementSet fibonacci_qutrit(int m) {
    if (m < 2) throw ValidationError("Fibonacci measurements need m >= 2");
    std::vector<std::vector<HermitianOperator>> el;
    for (int x = 0; x < m; ++x) {
        const double z = 1.0 - static_cast<double>(x) / (m - 1);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = x * kSpiral;
        const double ph = std::numbers::pi * x / (m - 1);
        VectorXcd psi1(3), psi2(3);
        psi1 << s * std::cos(th), s * std::sin(th), z * std::polar(1.0, ph);
        psi2 << std::sin(th), -std::cos(th), 0.0;
        const HermitianOperator p1 = HermitianOperator::projector(psi1);
        const HermitianOperator p2 = HermitianOperator::projector(psi2);
        el.push_back({p1, p2, HermitianOperator::identity(3) - p1 - p2});
    }
    return MeasurementSet(std::move(el));
}

MeasurementSet planar_measurements(const PlanarAngles& angles) {
    std::vector<std::vector<HermitianOperator>> el;
    for (double a : angles.values()) el.push_back(dichotomic({std::sin(a), 0.0, std::cos(a)}));
    return MeasurementSet(std::move(el));
}

double planar_bound(const PlanarAngles& angles) {
    const auto& a = angles.values();
    double s = std::cos(a.back() / 2.0);
    for (std::size_t i = 1; i < a.size(); ++i) s += std::sin((a[i] - a[i - 1]) / 2.0);
    return 1.0 / s;
}

MeasurementSet projective_from_bloch(const std::vector<std::array<double, 3>>& axes) {
    std::vector<std::vector<HermitianOperator>> el;
    for (auto n : axes) {
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (!(len > 0)) throw ValidationError("measurement axis is zero");
        el.push_back(dichotomic({n[0] / len, n[1] / len, n[2] / len}));
    }
    return MeasurementSet(std::move(el));
}

MatrixXcd haar_unitary(int d, Rng& rng) {
    MatrixXcd z(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    // Column-major fill order is part of the reproducibility contract.
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = cplx(re * s, im * s);
        }
    Eigen::HouseholderQR<MatrixXcd> qr(z);
    MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d, d);
    const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

HermitianOperator random_state(int n, Rng& rng) {
    if (n < 1) throw ValidationError("random_state needs n >= 1");
    MatrixXcd g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = cplx(re, im);
        }
    const MatrixXcd r = g * g.adjoint();
    return HermitianOperator(r / r.trace().real());
}

MeasurementSet random_projective(int m, int d, std::uint64_t seed) {
    if (m < 1 || d < 2) throw ValidationError("random_projective needs m >= 1 and d >= 2");
    Rng rng(seed);
    std::vector<std::vector<HermitianOperator>> el;
    for (int x = 0; x < m; ++x) {
        const MatrixXcd u = haar_unitary(d, rng);
        std::vector<HermitianOperator> row;
        for (int a = 0; a < d; ++a) row.push_back(HermitianOperator::projector(u.col(a)));
        el.push_back(std::move(row));
    }
    return MeasurementSet(std::move(el));
}

MeasurementSet random_povm(int m, int d, int k, std::uint64_t seed) {
    if (m < 1 || d < 2) throw ValidationError("random_povm needs m >= 1 and d >= 2");
    if (k < d || k > d * d) throw ValidationError("random_povm needs d <= k <= d^2 outcomes");
    Rng rng(seed);
    std::vector<std::vector<HermitianOperator>> el;
    for (int x = 0; x < m; ++x) {
        const MatrixXcd u = haar_unitary(k, rng);
        const MatrixXcd v = u.leftCols(d);
        std::vector<MatrixXcd> parts;
        MatrixXcd total = MatrixXcd::Zero(d, d);
        for (int a = 0; a < k; ++a) {
            const MatrixXcd e = v.row(a).adjoint() * v.row(a);
            parts.push_back(e);
            total += e;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (total + total.adjoint()));
        const MatrixXcd isq = es.operatorInverseSqrt();
        std::vector<HermitianOperator> row;
        for (const auto& e : parts) {
            const MatrixXcd n = isq * e * isq;
            row.emplace_back(0.5 * (n + n.adjoint()));
        }
        el.push_back(std::move(row));
    }
    return MeasurementSet(std::move(el));
}

bool linearly_independent(const MeasurementSet& m, int x, double tol) {
    const int k = m.outcomes();
    MatrixXd c(m.dim() * m.dim(), k);
    for (int a = 0; a < k; ++a) c.col(a) = m(a, x).coords();
    Eigen::JacobiSVD<MatrixXd> svd(c);
    return svd.singularValues().minCoeff() > tol * std::max(1.0, svd.singularValues().maxCoeff());
}

} // namespace steerlp
