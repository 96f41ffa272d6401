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

#include <string>
#include <vector>

#include "steerlp/hermitian.hpp"

namespace steerlp {

/// Default tolerance for positivity, completeness and no-signalling checks.
inline constexpr double kPsdTolerance = 1e-10;

/// m POVMs with k outcomes each on a d-dimensional space. elements[x][a] is
/// M_{a|x}. Only the shape is enforced on construction; use validate() for the
/// physical invariants.
class MeasurementSet {
  public:
    MeasurementSet() = default;
    explicit MeasurementSet(std::vector<std::vector<HermitianOperator>> elements);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int outcomes() const noexcept { return k_; }
    [[nodiscard]] int count() const noexcept { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const HermitianOperator& operator()(int a, int x) const { return elements_[x][a]; }
    [[nodiscard]] const std::vector<std::vector<HermitianOperator>>& elements() const noexcept { return elements_; }

  private:
    int d_ = 0;
    int k_ = 0;
    std::vector<std::vector<HermitianOperator>> elements_;
};

/// The sub-normalised conditional states sigma_{a|x}; elements[x][a].
class Assemblage {
  public:
    Assemblage() = default;
    explicit Assemblage(std::vector<std::vector<HermitianOperator>> elements);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int outcomes() const noexcept { return k_; }
    [[nodiscard]] int settings() const noexcept { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const HermitianOperator& operator()(int a, int x) const { return elements_[x][a]; }
    [[nodiscard]] const std::vector<std::vector<HermitianOperator>>& elements() const noexcept { return elements_; }
    /// sum_a sigma_{a|0}.
    [[nodiscard]] const HermitianOperator& reduced() const noexcept { return reduced_; }

  private:
    int d_ = 0;
    int k_ = 0;
    std::vector<std::vector<HermitianOperator>> elements_;
    HermitianOperator reduced_;
};

/// A state on C^{dA} (x) C^{dB}; row index i*dB + b.
class BipartiteState {
  public:
    BipartiteState() = default;
    BipartiteState(HermitianOperator rho, int dim_a, int dim_b);

    [[nodiscard]] int dim_a() const noexcept { return da_; }
    [[nodiscard]] int dim_b() const noexcept { return db_; }
    [[nodiscard]] const HermitianOperator& matrix() const noexcept { return rho_; }
    [[nodiscard]] HermitianOperator reduced_a() const;
    [[nodiscard]] HermitianOperator reduced_b() const;

    static BipartiteState maximally_entangled(int d);
    static BipartiteState product(const HermitianOperator& rho_a, const HermitianOperator& rho_b);

  private:
    int da_ = 0;
    int db_ = 0;
    HermitianOperator rho_;
};

/// eta * A + (1 - eta) * Tr(A) * 1/d. Any real eta is accepted.
HermitianOperator depolarize(const HermitianOperator& a, double eta);
/// As above, but checks that A has dimension d.
HermitianOperator depolarize(const HermitianOperator& a, double eta, int d);
/// Applies depolarize() to every element.
MeasurementSet depolarize(const MeasurementSet& m, double eta);

/// sigma_{a|x} = M_{a|x}^T / d. Throws ValidationError for an invalid POVM set.
Assemblage assemblage_from_measurements(const MeasurementSet& m);

/// sigma_{a|x} = Tr_A[(M_{a|x} (x) 1) rho_AB], computed by explicit index
/// contraction. M need not be positive (quasi-measurements are allowed).
Assemblage assemblage_from_state(const BipartiteState& rho, const MeasurementSet& m);

/// Tr_A and Tr_B of an arbitrary (dA*dB)-square matrix.
MatrixXcd partial_trace_a(const MatrixXcd& rho, int dim_a, int dim_b);
MatrixXcd partial_trace_b(const MatrixXcd& rho, int dim_a, int dim_b);

struct InvariantCheck {
    std::string name;
    double violation = 0.0;
    bool pass = true;
};

/// Pass/fail report with the worst violation per invariant.
struct ValidationReport {
    std::vector<InvariantCheck> checks;
    double tolerance = kPsdTolerance;

    [[nodiscard]] bool pass() const;
    [[nodiscard]] double violation(const std::string& name) const;
    [[nodiscard]] std::string summary() const;
};

ValidationReport validate(const MeasurementSet& m, double tol = kPsdTolerance);
ValidationReport validate(const Assemblage& s, double tol = kPsdTolerance);
ValidationReport validate(const BipartiteState& rho, double tol = kPsdTolerance);

/// Throws ValidationError naming the failing invariant.
void require_valid(const MeasurementSet& m, double tol = kPsdTolerance);
void require_valid(const Assemblage& s, double tol = kPsdTolerance);
void require_valid(const BipartiteState& rho, double tol = kPsdTolerance);

} // namespace steerlp
