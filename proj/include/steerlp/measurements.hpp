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

#include <array>
#include <cstdint>
#include <vector>

#include "steerlp/quantum.hpp"
#include "steerlp/rng.hpp"

namespace steerlp {

/// Bloch-plane angles of dichotomic projective measurements, reduced modulo
/// pi, sorted, deduplicated (1e-12) and shifted so the first angle is 0.
class PlanarAngles {
  public:
    explicit PlanarAngles(std::vector<double> angles);
    [[nodiscard]] const std::vector<double>& values() const noexcept { return a_; }
    [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }

  private:
    std::vector<double> a_;
};

/// m dichotomic measurements along a spiral of Bloch vectors; m >= 2.
MeasurementSet fibonacci_qubit(int m);
/// m trichotomic projective measurements on a qutrit; m >= 2.
MeasurementSet fibonacci_qutrit(int m);
/// Bloch vector of M_{0|x} for fibonacci_qubit(m).
std::array<double, 3> fibonacci_qubit_axis(int m, int x);

/// Measurements with Bloch axes (sin a, 0, cos a).
MeasurementSet planar_measurements(const PlanarAngles& angles);
/// 1 / (sum of sin(gap/2) over consecutive angles + cos(a_last/2)).
double planar_bound(const PlanarAngles& angles);

/// One dichotomic projective measurement (1 +- n.sigma)/2 per unit vector.
MeasurementSet projective_from_bloch(const std::vector<std::array<double, 3>>& axes);

/// Haar-random d x d unitary (QR of a complex Ginibre matrix with phase fix).
MatrixXcd haar_unitary(int d, Rng& rng);

/// Hilbert-Schmidt random density matrix G G^dagger / Tr(G G^dagger), G complex Ginibre.
HermitianOperator random_state(int n, Rng& rng);

/// m measurements in Haar-random orthonormal bases (k = d).
MeasurementSet random_projective(int m, int d, std::uint64_t seed);
/// m rank-one POVMs with k outcomes, d <= k <= d^2, from Haar-random isometries.
MeasurementSet random_povm(int m, int d, int k, std::uint64_t seed);

/// True if the elements of POVM x are linearly independent (necessary for
/// extremality of rank-one POVMs).
bool linearly_independent(const MeasurementSet& m, int x, double tol = 1e-9);

} // namespace steerlp
