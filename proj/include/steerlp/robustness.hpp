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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steerlp/conic.hpp"
#include "steerlp/polytope.hpp"
#include "steerlp/quantum.hpp"

namespace steerlp {

enum class LpStatus { Optimal, Inaccurate, Infeasible, Unbounded, Failed };

std::string to_string(LpStatus s);

/// Linear functional {Y_{a|x}} with its maximum over local hidden-state
/// assemblages built from the polytope vertices. It separates an assemblage
/// sigma whenever sum Tr(Y_{a|x} sigma_{a|x}) > lhs_bound.
struct SteeringCertificate {
    std::vector<std::vector<HermitianOperator>> y; ///< y[x][a]
    double lhs_bound = 0.0;
    /// Functional evaluated on the noisy assemblage just above the LP optimum.
    double value_above = 0.0;
    bool separates = false;
};

struct RobustnessResult {
    double eta_tilde = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    /// Shrinking factor used for the upper bound (NaN when none applies).
    double r_used = 0.0;
    LpStatus status = LpStatus::Failed;
    std::optional<SteeringCertificate> certificate;
    /// Only eta_tilde >= eta* is known (outer vertex set).
    bool upper_only = false;
    /// eta_tilde > 1.
    bool capped = false;
    double wall_time_s = 0.0;
    int iterations = 0;
    /// |sum of p(a|0, lambda) - total weight of sigma_{a|0}|.
    double normalization_residual = 0.0;
    std::string note;
};

/// Noise target tau on the bipartite space: rho_AB -> eta rho_AB + (1 - eta) tau.
struct NoiseModel {
    HermitianOperator target;
    int dim_a = 0;
    int dim_b = 0;

    /// tau = 1/dA (x) rho_B.
    static NoiseModel local_white(const BipartiteState& rho);
    /// tau = 1/(dA dB).
    static NoiseModel global_white(int dim_a, int dim_b);
    /// Checks unit trace and positivity; throws ValidationError.
    void validate() const;
};

enum class NormalMethod { Structured, Dense };

struct LpOptions {
    conic::SolverOptions solver;
    NormalMethod normal = NormalMethod::Structured;
    bool certificate = true;
};

/// An assemblage family sigma_{a|x}(eta) = eta * slope[x][a] + offset[x][a];
/// both families must be no-signalling.
struct LinearAssemblage {
    std::vector<std::vector<HermitianOperator>> slope;
    std::vector<std::vector<HermitianOperator>> offset;

    /// sigma - Tr(sigma) 1/d and Tr(sigma) 1/d.
    static LinearAssemblage depolarizing(const Assemblage& a);
    /// Tr_A[(M (x) 1)(eta rho + (1 - eta) tau)].
    static LinearAssemblage from_state(const BipartiteState& rho, const MeasurementSet& m, const NoiseModel& noise);
};

/// max eta such that sigma(eta) decomposes over the polytope vertices with
/// response functions sharing a common normalisation (eta >= 0 imposed).
/// Only eta_tilde, status, certificate and diagnostics are filled.
RobustnessResult robustness_lp(const LinearAssemblage& family, const StatePolytope& p, const LpOptions& opt = {});

/// Depolarizing-robustness LP of an assemblage with the bracket from the
/// polytope's shrinking factor (inner) or an upper-only value (outer).
RobustnessResult approx_robustness(const Assemblage& a, const StatePolytope& p, const LpOptions& opt = {});
RobustnessResult measurement_robustness(const MeasurementSet& m, const StatePolytope& p, const LpOptions& opt = {});

/// Upper bound on the state's robustness from an outer vertex set.
RobustnessResult state_upper_bound(const BipartiteState& rho, const MeasurementSet& m, const StatePolytope& outer,
                                   const NoiseModel& noise, const LpOptions& opt = {});
/// Lower bound valid for all measurements whose depolarised images by mu lie in
/// the hull of m, using quasi-measurements depolarize(m, 1/mu). Infeasible
/// instances report lower = 0.
RobustnessResult state_lower_bound(const BipartiteState& rho, const MeasurementSet& m, double mu,
                                   const StatePolytope& inner, const NoiseModel& noise, const LpOptions& opt = {});

/// Shrinking factor of the polytope spanned by the normalised POVM elements
/// M_{a|x} / Tr M_{a|x}; for rank-one projective qubit measurements this is the
/// factor mu entering state_lower_bound.
double measurement_shrinking_factor(const MeasurementSet& m, const FacetOptions& opt = {});

/// (eta, eta / r); r must lie in (0, 1].
std::pair<double, double> bracket(double eta_tilde, double r);

} // namespace steerlp
