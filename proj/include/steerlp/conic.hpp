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

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace steerlp::conic {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// Variable layout: `orthant` nonnegative entries first, then second-order
/// cones {(t, u): t >= |u|} in the listed sizes, then complex Hermitian PSD
/// blocks of the listed matrix dimensions. A PSD block of dimension d occupies
/// d*d entries holding the matrix in the orthonormal Hermitian basis of
/// steerlp::basis.
struct ConeLayout {
    int orthant = 0;
    std::vector<int> soc;
    std::vector<int> psd;

    [[nodiscard]] int size() const;
    /// Barrier degree: orthant count + one per SOC + d per PSD block.
    [[nodiscard]] int degree() const;
};

/// minimize c'x  subject to  A x = b,  x in K.
struct ConicProblem {
    SparseMatrix A;
    VectorXd b;
    VectorXd c;
    ConeLayout cones;
};

enum class SolveStatus { Optimal, Inaccurate, PrimalInfeasible, DualInfeasible, IterationLimit, NumericalFailure };

std::string to_string(SolveStatus s);

struct SolverOptions {
    /// Relative primal/dual residual and duality-gap target.
    double tol = 1e-9;
    /// Residuals below this are reported as Inaccurate instead of failing.
    double loose_tol = 1e-6;
    int max_iter = 200;
    double step_fraction = 0.99;
    int refine_steps = 2;
    bool verbose = false;
};

struct ConicSolution {
    VectorXd x;
    VectorXd y;
    VectorXd s;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
};

/// Nesterov-Todd scaling at a strictly feasible pair (x, s), with
/// W s = W^{-T} x = lambda.
class Scaling {
  public:
    Scaling(const ConeLayout& cones, const VectorXd& x, const VectorXd& s);

    [[nodiscard]] const ConeLayout& cones() const noexcept { return *cones_; }
    [[nodiscard]] const VectorXd& lambda() const noexcept { return lambda_; }
    /// x/s on the orthant part.
    [[nodiscard]] VectorXd orthant_h() const;

    [[nodiscard]] VectorXd apply_w(const VectorXd& v) const;
    [[nodiscard]] VectorXd apply_w_inv_t(const VectorXd& v) const;
    [[nodiscard]] VectorXd apply_w_t(const VectorXd& v) const;
    /// H = W^T W.
    [[nodiscard]] VectorXd apply_h(const VectorXd& v) const;
    /// Dense H restricted to SOC block i / PSD block i.
    [[nodiscard]] MatrixXd soc_h(int i) const;
    [[nodiscard]] MatrixXd psd_h(int i) const;

    /// Jordan product u o v in the cone algebra.
    [[nodiscard]] VectorXd product(const VectorXd& u, const VectorXd& v) const;
    /// lambda \ r, i.e. z with lambda o z = r.
    [[nodiscard]] VectorXd divide(const VectorXd& r) const;
    /// Largest alpha with lambda + alpha d in K (infinity if unbounded).
    [[nodiscard]] double max_step(const VectorXd& d) const;
    /// The cone's identity element.
    [[nodiscard]] VectorXd identity() const;

  private:
    struct SocBlock {
        double beta = 1.0;
        VectorXd v;
    };
    struct PsdBlock {
        MatrixXcd r;
        MatrixXcd r_inv;
        VectorXd lam;
    };
    const ConeLayout* cones_;
    VectorXd w_orth_;
    std::vector<SocBlock> soc_;
    std::vector<PsdBlock> psd_;
    VectorXd lambda_;
};

/// Solves A H A^T y = r for the current scaling.
class NormalSolver {
  public:
    virtual ~NormalSolver() = default;
    virtual void factor(const ConicProblem& p, const Scaling& w) = 0;
    [[nodiscard]] virtual VectorXd solve(const VectorXd& rhs) const = 0;
};

/// Forms A H A^T densely block by block and factors it with a Cholesky
/// decomposition (diagonal regularisation on failure).
class DenseNormalSolver final : public NormalSolver {
  public:
    void factor(const ConicProblem& p, const Scaling& w) override;
    [[nodiscard]] VectorXd solve(const VectorXd& rhs) const override;

  private:
    void prepare(const ConicProblem& p);
    const ConicProblem* prepared_for_ = nullptr;
    // Per cone block (orthant excluded): touched rows and the dense slice of A.
    std::vector<std::vector<int>> rows_;
    std::vector<MatrixXd> slices_;
    Eigen::LLT<MatrixXd> llt_;
};

/// Cone-aware minimum eigenvalue of x (orthant entries, t - |u|, lambda_min).
double min_cone_eigenvalue(const ConeLayout& cones, const VectorXd& x);

/// Primal-dual interior point method with Mehrotra predictor-corrector steps.
ConicSolution solve(const ConicProblem& p, NormalSolver& normal, const SolverOptions& opt = {});

/// Convenience overload using DenseNormalSolver.
ConicSolution solve(const ConicProblem& p, const SolverOptions& opt = {});

} // namespace steerlp::conic
