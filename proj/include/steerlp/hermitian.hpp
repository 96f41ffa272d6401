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

#include <complex>

#include <Eigen/Dense>

namespace steerlp {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Real coordinates of Hermitian d x d matrices in the orthonormal basis
///   B_0 = 1/sqrt(d),
///   (E_jk + E_kj)/sqrt(2) and (-i E_jk + i E_kj)/sqrt(2) for j < k (pairs in
///   row-major order, symmetric element first),
///   (sum_{i<l} E_ii - l E_ll)/sqrt(l(l+1)) for l = 1..d-1.
/// Tr(AB) equals the dot product of the coordinate vectors. For d = 2 the
/// coordinates of a state are (1, r_x, r_y, r_z)/sqrt(2).
namespace basis {

/// Coordinates of an arbitrary square matrix's Hermitian part.
VectorXd coords(const MatrixXcd& a);

/// Inverse of coords().
MatrixXcd from_coords(const VectorXd& c, int d);

/// The basis element B_j.
MatrixXcd element(int j, int d);

} // namespace basis

/// A d x d complex Hermitian matrix. Construction checks conjugate symmetry to
/// 1e-12 (relative to the largest entry) and then stores the exact Hermitian
/// part, so the invariant holds bitwise afterwards.
class HermitianOperator {
  public:
    HermitianOperator() = default;
    explicit HermitianOperator(MatrixXcd entries);

    static HermitianOperator from_coords(const VectorXd& c, int d);
    static HermitianOperator identity(int d);
    static HermitianOperator zero(int d);
    /// |v><v| / <v|v>.
    static HermitianOperator projector(const VectorXcd& v);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(m_.rows()); }
    [[nodiscard]] const MatrixXcd& matrix() const noexcept { return m_; }
    [[nodiscard]] VectorXd coords() const { return basis::coords(m_); }
    [[nodiscard]] double trace() const { return m_.trace().real(); }
    [[nodiscard]] VectorXd eigenvalues() const;
    [[nodiscard]] double min_eigenvalue() const;
    [[nodiscard]] double max_eigenvalue() const;
    /// Largest absolute eigenvalue.
    [[nodiscard]] double operator_norm() const;
    [[nodiscard]] HermitianOperator transpose() const;

    HermitianOperator& operator+=(const HermitianOperator& o);
    HermitianOperator& operator-=(const HermitianOperator& o);
    HermitianOperator& operator*=(double s);

    friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
    friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
    friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }
    friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

  private:
    MatrixXcd m_;
};

/// Tr(AB) for Hermitian A, B.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Largest entrywise modulus of A - B.
double max_abs_diff(const MatrixXcd& a, const MatrixXcd& b);

} // namespace steerlp
