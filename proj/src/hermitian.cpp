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
#include "steerlp/hermitian.hpp"

#include <cmath>
#include <sstream>

#include "steerlp/errors.hpp"

namespace steerlp {

namespace basis {

VectorXd coords(const MatrixXcd& a) {
    const int d = static_cast<int>(a.rows());
    VectorXd c(d * d);
    const double sq2 = std::sqrt(2.0);
    int idx = 0;
    cplx tr = a.trace();
    c(idx++) = tr.real() / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            // Hermitian part: (a_jk + conj(a_kj)) / 2
            const cplx h = 0.5 * (a(j, k) + std::conj(a(k, j)));
            c(idx++) = sq2 * h.real();
            c(idx++) = -sq2 * h.imag();
        }
    }
    double partial = 0.0;
    for (int l = 1; l < d; ++l) {
        partial += a(l - 1, l - 1).real();
        c(idx++) = (partial - l * a(l, l).real()) / std::sqrt(static_cast<double>(l) * (l + 1));
    }
    return c;
}

MatrixXcd from_coords(const VectorXd& c, int d) {
    if (c.size() != static_cast<Eigen::Index>(d) * d) {
        throw ValidationError("coordinate vector has wrong length for dimension " + std::to_string(d));
    }
    MatrixXcd a = MatrixXcd::Zero(d, d);
    const double isq2 = 1.0 / std::sqrt(2.0);
    int idx = 0;
    const double c0 = c(idx++) / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) a(i, i) = c0;
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            const double s = c(idx++) * isq2;
            const double t = c(idx++) * isq2;
            a(j, k) += cplx(s, -t);
            a(k, j) += cplx(s, t);
        }
    }
    for (int l = 1; l < d; ++l) {
        const double v = c(idx++) / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int i = 0; i < l; ++i) a(i, i) += v;
        a(l, l) -= l * v;
    }
    return a;
}

MatrixXcd element(int j, int d) {
    VectorXd e = VectorXd::Zero(d * d);
    e(j) = 1.0;
    return from_coords(e, d);
}

} // namespace basis

HermitianOperator::HermitianOperator(MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("Hermitian operator must be a non-empty square matrix");
    }
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= 1e-12 * scale)) {
        std::ostringstream os;
        os << "matrix is not Hermitian (asymmetry " << asym << ")";
        throw ValidationError(os.str());
    }
    MatrixXcd h = 0.5 * (m_ + m_.adjoint());
    m_ = std::move(h);
}

HermitianOperator HermitianOperator::from_coords(const VectorXd& c, int d) {
    return HermitianOperator(basis::from_coords(c, d));
}

HermitianOperator HermitianOperator::identity(int d) { return HermitianOperator(MatrixXcd::Identity(d, d)); }

HermitianOperator HermitianOperator::zero(int d) { return HermitianOperator(MatrixXcd::Zero(d, d)); }

HermitianOperator HermitianOperator::projector(const VectorXcd& v) {
    const double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) throw ValidationError("cannot build projector onto the zero vector");
    return HermitianOperator(v * v.adjoint() / n2);
}

VectorXd HermitianOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double HermitianOperator::min_eigenvalue() const { return eigenvalues().minCoeff(); }

double HermitianOperator::max_eigenvalue() const { return eigenvalues().maxCoeff(); }

double HermitianOperator::operator_norm() const { return eigenvalues().cwiseAbs().maxCoeff(); }

HermitianOperator HermitianOperator::transpose() const {
    HermitianOperator t;
    t.m_ = m_.transpose();
    return t;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
    if (o.dim() != dim()) throw ValidationError("dimension mismatch in operator sum");
    m_ += o.m_;
    return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& o) {
    if (o.dim() != dim()) throw ValidationError("dimension mismatch in operator difference");
    m_ -= o.m_;
    return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
    m_ *= s;
    return *this;
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
    return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

double max_abs_diff(const MatrixXcd& a, const MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace steerlp
