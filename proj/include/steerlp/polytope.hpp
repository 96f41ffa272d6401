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
#include <optional>
#include <string>
#include <vector>

#include "steerlp/hermitian.hpp"

namespace steerlp {

/// Tr(F rho) <= b.
struct Facet {
    HermitianOperator normal;
    double offset = 0.0;
};

enum class PolytopeKind { Inner, Outer };

/// A Gaussian integer a + bi.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
    friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

/// Finite vertex set of d-dimensional unit-trace operators with optional facet
/// description and shrinking factor. Inner polytopes require PSD vertices.
class StatePolytope {
  public:
    StatePolytope() = default;
    /// Validates unit trace (1e-12) and, for inner polytopes, positivity (1e-10).
    StatePolytope(int d, std::vector<HermitianOperator> vertices, PolytopeKind kind, std::string provenance,
                  bool planar = false);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] const std::vector<HermitianOperator>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] PolytopeKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& provenance() const noexcept { return provenance_; }
    /// d = 2 polytope confined to the x-z Bloch plane; facets and r refer to that plane.
    [[nodiscard]] bool planar() const noexcept { return planar_; }

    [[nodiscard]] bool has_facets() const noexcept { return facets_.has_value(); }
    [[nodiscard]] const std::vector<Facet>& facets() const;
    [[nodiscard]] std::optional<double> shrinking_factor() const noexcept { return r_; }
    /// Facets attaining the minimum in the shrinking-factor formula.
    [[nodiscard]] const std::vector<int>& critical_facets() const noexcept { return critical_; }
    /// Exact vertex vectors, present for rational pure-state polytopes.
    [[nodiscard]] const std::vector<std::vector<GaussInt>>& exact_vectors() const noexcept { return exact_; }

    [[nodiscard]] StatePolytope with_facets(std::vector<Facet> facets) const;
    [[nodiscard]] StatePolytope with_shrinking_factor(double r, std::vector<int> critical = {}) const;
    [[nodiscard]] StatePolytope with_exact_vectors(std::vector<std::vector<GaussInt>> v) const;
    [[nodiscard]] StatePolytope with_provenance(std::string p) const;

  private:
    int d_ = 0;
    std::vector<HermitianOperator> vertices_;
    PolytopeKind kind_ = PolytopeKind::Inner;
    std::string provenance_;
    bool planar_ = false;
    std::optional<std::vector<Facet>> facets_;
    std::optional<double> r_;
    std::vector<int> critical_;
    std::vector<std::vector<GaussInt>> exact_;
};

/// (1 + r . sigma) / 2.
HermitianOperator bloch_state(const std::array<double, 3>& r);
/// (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z).
std::array<double, 3> bloch_vector(const HermitianOperator& rho);

/// All distinct projectors onto Gaussian-integer vectors with squared norm <= q.
StatePolytope rational_pure_states(int d, int q);

struct FacetOptions {
    /// Maximum vertex count; negative selects the default (unlimited for d = 2, 150 for d >= 3).
    int vertex_cap = -1;
    /// Exact integer hull for d = 2 rational polytopes.
    bool exact = false;
    double tolerance = 1e-9;
};

/// Irredundant facets Tr(F rho) <= b, each normalised to max|coords(F)| = 1.
StatePolytope facet_enumeration(const StatePolytope& p, const FacetOptions& opt = {});

struct ShrinkingFactor {
    double r = 0.0;
    std::vector<int> critical;
};

/// min_i (d b_i - Tr F_i) / (d lambda_max(F_i) - Tr F_i) with the argmin facets (ties within 1e-7).
ShrinkingFactor shrinking_factor(const StatePolytope& p);

/// facet_enumeration followed by shrinking_factor, stored on the result.
StatePolytope analyze(const StatePolytope& p, const FacetOptions& opt = {});

/// Basis vectors of a complete set of mutually unbiased bases, d prime;
/// result[x][a] is vector a of basis x.
std::vector<std::vector<VectorXcd>> mub_vectors(int d);
StatePolytope mub_polytope(int d);

/// Shrinking factor of the MUB polytope from the minimum over index tuples of
/// the smallest eigenvalue of the summed projectors.
double mub_shrinking_factor(int d, std::uint64_t tuple_cap = 15625);

/// Vertices Lambda_{1/r}(rho); the result is tagged as an outer approximation.
StatePolytope outer_from_inner(const StatePolytope& p);

struct RefinementStep {
    std::size_t vertices = 0;
    std::size_t facets = 0;
    double r = 0.0;
};

struct RefinementResult {
    StatePolytope polytope;
    /// steps[0] describes the input polytope, steps[i] the result of step i.
    std::vector<RefinementStep> steps;
    int completed = 0;
    bool truncated = false;
    std::string message;
};

/// Adds the maximum-eigenvalue eigenprojectors of every critical facet and
/// recomputes facets, `steps` times. Stops early (truncated) if the vertex cap
/// would be exceeded.
RefinementResult refine_polytope(const StatePolytope& p, int steps, const FacetOptions& opt = {});

enum class SphereKind { Icosphere, Fibonacci, Polygon };

/// d = 2 pure-state polytopes: icosphere subdivision level, Fibonacci point
/// count, or regular n-gon in the x-z plane. `poles` adds +-z (ignored for polygons).
StatePolytope sphere_polytope(SphereKind kind, int size, bool poles = false);

struct HierarchySize {
    std::uint64_t n = 0;
    double r_lower = 0.0;
};
HierarchySize hierarchy_size(int t, int d);

/// Largest t with (1 - t)/d + t rho in the convex hull of the vertices
/// (computed by a linear program); rho is in the hull iff the value is >= 1.
double ray_shoot(const StatePolytope& p, const HermitianOperator& rho);

/// Orthonormal basis (columns) of the span of the given coordinate vectors.
MatrixXd span_basis(const std::vector<VectorXd>& vectors, double tol = 1e-10);

} // namespace steerlp
