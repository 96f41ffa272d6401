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

#include <Eigen/Dense>

namespace steerlp::hull {

/// A supporting plane normal . p <= offset together with the input points on it.
struct Plane {
    std::array<double, 3> normal{};
    double offset = 0.0;
    std::vector<int> points;
};

/// Facets of the 3-D convex hull with coplanar triangles merged. Points within
/// `eps` of a plane count as lying on it. Throws ValidationError when the
/// points are not full-dimensional.
std::vector<Plane> hull3d(const std::vector<std::array<double, 3>>& pts, double eps = 1e-9);

/// Exact variant on integer coordinates (arbitrary precision internally).
std::vector<Plane> hull3d_exact(const std::vector<std::array<std::int64_t, 3>>& pts);

/// Edges of the 2-D convex hull as lines normal . p <= offset.
struct Line {
    std::array<double, 2> normal{};
    double offset = 0.0;
    std::array<int, 2> points{};
};
std::vector<Line> hull2d(const std::vector<std::array<double, 2>>& pts, double eps = 1e-12);

/// Incremental double description of the cone {z in R^D : h_i . z >= 0}.
/// Rows are normalised on insertion; rays are kept at unit length and
/// recomputed from their active rows after every combination.
class DoubleDescription {
  public:
    explicit DoubleDescription(int dim, double zero_tol = 1e-9);

    /// Adds constraints. The first call must contain dim linearly independent
    /// rows; later calls may be arbitrarily small.
    void add(const std::vector<Eigen::VectorXd>& rows);

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t constraint_count() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t ray_count() const noexcept { return rays_.size(); }
    [[nodiscard]] const Eigen::VectorXd& ray(std::size_t i) const { return rays_[i].r; }
    /// Indices of constraints tight at ray i.
    [[nodiscard]] std::vector<int> active(std::size_t i) const;

  private:
    struct Ray {
        Eigen::VectorXd r;
        std::vector<std::uint64_t> zero;
    };
    void initialise(const std::vector<Eigen::VectorXd>& rows);
    void insert(int idx);
    bool adjacent(const std::vector<std::uint64_t>& common) const;
    Eigen::VectorXd purify(const std::vector<std::uint64_t>& zero, const Eigen::VectorXd& guess) const;

    int dim_;
    double tol_;
    std::vector<Eigen::VectorXd> rows_;
    std::vector<Ray> rays_;
    std::size_t words_ = 0;
};

} // namespace steerlp::hull
