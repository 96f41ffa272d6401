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
#include "steerlp/oracle.hpp"

#include <chrono>
#include <limits>
#include <string>

#include "steerlp/errors.hpp"

namespace steerlp {

namespace {

// Each strategy block of A is a set of identity blocks at rows (x, outcome[x]),
// so its contribution to A H A^T is H copied into every pair of those row
// groups; no per-block slices are stored.
class StrategyNormal final : public conic::NormalSolver {
  public:
    StrategyNormal(int m, int k, int D, int n, VectorXd eta_col, std::vector<int> group_row)
        : m_(m), k_(k), D_(D), n_(n), eta_col_(std::move(eta_col)), group_row_(std::move(group_row)) {}

    void factor(const conic::ConicProblem& p, const conic::Scaling& w) override {
        const int rows = static_cast<int>(p.A.rows());
        MatrixXd M = MatrixXd::Zero(rows, rows);
        M.noalias() += w.orthant_h()(0) * eta_col_ * eta_col_.transpose();
        const bool soc = !p.cones.soc.empty();
        std::vector<int> at;
        at.reserve(m_);
        for (int l = 0; l < n_; ++l) {
            const MatrixXd H = soc ? w.soc_h(l) : w.psd_h(l);
            at.clear();
            int r = l;
            for (int x = 0; x < m_; ++x) {
                const int g = group_row_[x * k_ + r % k_];
                r /= k_;
                if (g >= 0) at.push_back(g);
            }
            for (int i : at)
                for (int j : at)
                    if (j <= i) M.block(i, j, D_, D_) += H;
        }
        const double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
        llt_.compute(M);
        double reg = 1e-14 * scale;
        while (llt_.info() != Eigen::Success) {
            if (reg > 1e-2 * scale) throw SolverError("normal equations are numerically singular");
            MatrixXd Mr = M;
            Mr.diagonal().array() += reg;
            llt_.compute(Mr);
            reg *= 100.0;
        }
    }

    [[nodiscard]] VectorXd solve(const VectorXd& rhs) const override { return llt_.solve(rhs); }

  private:
    int m_, k_, D_, n_;
    VectorXd eta_col_;
    std::vector<int> group_row_;
    Eigen::LLT<MatrixXd> llt_;
};

} // namespace

std::uint64_t strategy_count(int m, int k, std::uint64_t cap) {
    if (m < 1 || k < 1) throw ValidationError("strategy enumeration needs m >= 1 and k >= 1");
    std::uint64_t n = 1;
    for (int x = 0; x < m; ++x) {
        if (n > cap / static_cast<std::uint64_t>(k)) {
            throw CapExceededError("k^m = " + std::to_string(k) + "^" + std::to_string(m) +
                                   " deterministic strategies exceed the cap of " + std::to_string(cap) +
                                   "; use the polytope LP instead");
        }
        n *= static_cast<std::uint64_t>(k);
    }
    return n;
}

std::vector<DeterministicStrategy> enumerate_strategies(int m, int k, std::uint64_t cap) {
    const std::uint64_t n = strategy_count(m, k, cap);
    std::vector<DeterministicStrategy> out;
    out.reserve(n);
    for (std::uint64_t l = 0; l < n; ++l) {
        DeterministicStrategy s;
        s.index = l;
        s.outcome.resize(m);
        std::uint64_t r = l;
        for (int x = 0; x < m; ++x) {
            s.outcome[x] = static_cast<int>(r % k);
            r /= k;
        }
        out.push_back(std::move(s));
    }
    return out;
}

OracleResult exact_robustness(const LinearAssemblage& family, const OracleOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    if (family.slope.empty() || family.slope.size() != family.offset.size()) {
        throw ValidationError("assemblage family is empty");
    }
    const int m = static_cast<int>(family.slope.size());
    const int k = static_cast<int>(family.slope.front().size());
    const int d = family.slope.front().front().dim();
    const int D = d * d;
    const std::uint64_t count = strategy_count(m, k, opt.cap);
    const int n = static_cast<int>(count);

    // Rows (x, a, j) with the last outcome dropped for x >= 1: by no-signalling
    // the outcome sums coincide across settings.
    auto kept = [&](int x, int a) { return x == 0 || a < k - 1; };
    auto erow = [&](int x, int a) { return x == 0 ? a * D : k * D + ((x - 1) * (k - 1) + a) * D; };
    const int rows = k * D + (m - 1) * (k - 1) * D;

    conic::ConicProblem sdp;
    sdp.cones.orthant = 1;
    if (d == 2) {
        sdp.cones.soc.assign(n, 4);
    } else {
        sdp.cones.psd.assign(n, d);
    }
    const int cols = 1 + n * D;
    sdp.b = VectorXd::Zero(rows);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(rows) + static_cast<std::size_t>(n) * m * D);
    for (int x = 0; x < m; ++x)
        for (int a = 0; a < k; ++a) {
            if (static_cast<int>(family.slope[x].size()) != k) throw ValidationError("ragged assemblage family");
            if (!kept(x, a)) continue;
            const VectorXd nc = family.slope[x][a].coords();
            const VectorXd tc = family.offset[x][a].coords();
            for (int j = 0; j < D; ++j) {
                if (nc(j) != 0.0) trip.emplace_back(erow(x, a) + j, 0, -nc(j));
                sdp.b(erow(x, a) + j) = tc(j);
            }
        }
    for (int l = 0; l < n; ++l) {
        int r = l;
        for (int x = 0; x < m; ++x) {
            const int a = r % k;
            r /= k;
            if (!kept(x, a)) continue;
            for (int j = 0; j < D; ++j) trip.emplace_back(erow(x, a) + j, 1 + l * D + j, 1.0);
        }
    }
    sdp.A.resize(rows, cols);
    sdp.A.setFromTriplets(trip.begin(), trip.end());
    sdp.c = VectorXd::Zero(cols);
    sdp.c(0) = -1.0;

    std::vector<int> group_row(static_cast<std::size_t>(m) * k, -1);
    for (int x = 0; x < m; ++x)
        for (int a = 0; a < k; ++a)
            if (kept(x, a)) group_row[x * k + a] = erow(x, a);
    StrategyNormal normal(m, k, D, n, -VectorXd(sdp.A.col(0)), std::move(group_row));
    const conic::ConicSolution sol = conic::solve(sdp, normal, opt.solver);
    OracleResult res;
    res.strategies = count;
    res.iterations = sol.iterations;
    switch (sol.status) {
    case conic::SolveStatus::Optimal:
        res.status = LpStatus::Optimal;
        break;
    case conic::SolveStatus::Inaccurate:
        res.status = LpStatus::Inaccurate;
        break;
    case conic::SolveStatus::PrimalInfeasible:
        res.status = LpStatus::Infeasible;
        break;
    case conic::SolveStatus::DualInfeasible:
        res.status = LpStatus::Unbounded;
        break;
    default:
        res.status = LpStatus::Failed;
    }
    if (res.status == LpStatus::Optimal || res.status == LpStatus::Inaccurate) {
        res.eta = sol.x(0);
    } else if (res.status == LpStatus::Unbounded) {
        res.eta = std::numeric_limits<double>::infinity();
    } else {
        res.eta = std::numeric_limits<double>::quiet_NaN();
    }
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

OracleResult exact_robustness(const Assemblage& a, const OracleOptions& opt) {
    return exact_robustness(LinearAssemblage::depolarizing(a), opt);
}

OracleResult exact_robustness(const MeasurementSet& m, const OracleOptions& opt) {
    require_valid(m);
    return exact_robustness(LinearAssemblage::depolarizing(Assemblage(m.elements())), opt);
}

} // namespace steerlp
