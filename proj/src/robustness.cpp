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
#include "steerlp/robustness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "steerlp/errors.hpp"

namespace steerlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Column 0 is eta, then p(a|x,lambda) in lambda-major blocks. Equality rows
// come first (setting x, outcome a, reduced coordinate j), skipping the last
// outcome for x >= 1 because those rows follow from the others. Link rows
// (lambda, x >= 1) equate sum_a p(a|x,lambda) with sum_a p(a|0,lambda).
struct Layout {
    int m = 0;
    int k = 0;
    int n = 0;
    int D = 0;
    int nE = 0;
    int nL = 0;

    Layout(int m_, int k_, int n_, int D_) : m(m_), k(k_), n(n_), D(D_) {
        nE = k * D + (m - 1) * (k - 1) * D;
        nL = (m - 1) * n;
    }
    [[nodiscard]] bool kept(int x, int a) const { return x == 0 || a < k - 1; }
    [[nodiscard]] int erow(int x, int a) const { return x == 0 ? a * D : k * D + ((x - 1) * (k - 1) + a) * D; }
    [[nodiscard]] int lrow(int x, int lam) const { return nE + lam * (m - 1) + (x - 1); }
    [[nodiscard]] int col(int a, int x, int lam) const { return 1 + lam * m * k + x * k + a; }
    [[nodiscard]] int cols() const { return 1 + n * m * k; }
};

// Eliminates the link rows in closed form: for each lambda their normal
// matrix is diag(S_1..S_{m-1}) + S_0 11^T with S_x = sum_a h(a|x,lambda).
// The remaining Schur complement on the equality rows is dense but small.
class StructuredNormal final : public conic::NormalSolver {
  public:
    StructuredNormal(const Layout& lay, const MatrixXd& v, const VectorXd& nhat) : lay_(lay), v_(v), nhat_(nhat) {}

    void factor(const conic::ConicProblem& p, const conic::Scaling& w) override {
        a_ = &p.A;
        h_ = w.orthant_h();
        const Layout& L = lay_;
        sx_.resize(L.n, L.m);
        gamma_.resize(L.n);
        MatrixXd se = MatrixXd::Zero(L.nE, L.nE);
        se.noalias() += h_(0) * nhat_ * nhat_.transpose();
        MatrixXd u = MatrixXd::Zero(L.nE, L.n);
        std::vector<double> g(L.k);
        for (int lam = 0; lam < L.n; ++lam) {
            const VectorXd vl = v_.col(lam);
            const MatrixXd vv = vl * vl.transpose();
            double inv_sum = 0.0;
            for (int x = 0; x < L.m; ++x) {
                double s = 0.0;
                for (int a = 0; a < L.k; ++a) s += h_(L.col(a, x, lam));
                sx_(lam, x) = s;
                inv_sum += 1.0 / s;
            }
            const double gamma = 1.0 / inv_sum;
            gamma_(lam) = gamma;
            const double sg = std::sqrt(gamma);
            for (int x = 0; x < L.m; ++x) {
                const double s = sx_(lam, x);
                for (int a = 0; a < L.k; ++a) g[a] = h_(L.col(a, x, lam));
                for (int a = 0; a < L.k; ++a) {
                    if (!L.kept(x, a)) continue;
                    const int ra = L.erow(x, a);
                    for (int b = 0; b <= a; ++b) {
                        if (!L.kept(x, b)) continue;
                        double c;
                        if (a == b) {
                            double rest = 0.0;
                            for (int o = 0; o < L.k; ++o)
                                if (o != a) rest += g[o];
                            c = g[a] * rest / s;
                        } else {
                            c = -g[a] * g[b] / s;
                        }
                        se.block(ra, L.erow(x, b), L.D, L.D) += c * vv;
                    }
                    u.col(lam).segment(ra, L.D) = (sg * g[a] / s) * vl;
                }
            }
        }
        se.selfadjointView<Eigen::Lower>().rankUpdate(u);
        const double scale = std::max(1.0, se.diagonal().cwiseAbs().maxCoeff());
        llt_.compute(se);
        double reg = 1e-14 * scale;
        while (llt_.info() != Eigen::Success) {
            if (reg > 1e-2 * scale) throw SolverError("normal equations are numerically singular");
            MatrixXd r = se;
            r.diagonal().array() += reg;
            llt_.compute(r);
            reg *= 100.0;
        }
    }

    [[nodiscard]] VectorXd solve(const VectorXd& rhs) const override {
        const Layout& L = lay_;
        VectorXd full = VectorXd::Zero(L.nE + L.nL);
        full.tail(L.nL) = link_inverse(rhs.tail(L.nL));
        VectorXd t = rhs.head(L.nE) - apply(full).head(L.nE);
        const VectorXd ye = llt_.solve(t);
        full.setZero();
        full.head(L.nE) = ye;
        const VectorXd yl = link_inverse(rhs.tail(L.nL) - apply(full).tail(L.nL));
        VectorXd out(L.nE + L.nL);
        out.head(L.nE) = ye;
        out.tail(L.nL) = yl;
        return out;
    }

  private:
    [[nodiscard]] VectorXd apply(const VectorXd& y) const {
        const VectorXd t = a_->transpose() * y;
        return *a_ * h_.cwiseProduct(t);
    }

    [[nodiscard]] VectorXd link_inverse(const VectorXd& r) const {
        const Layout& L = lay_;
        VectorXd out(L.nL);
        for (int lam = 0; lam < L.n; ++lam) {
            const int base = lam * (L.m - 1);
            double t = 0.0;
            for (int x = 1; x < L.m; ++x) t += r(base + x - 1) / sx_(lam, x);
            for (int x = 1; x < L.m; ++x) out(base + x - 1) = (r(base + x - 1) - gamma_(lam) * t) / sx_(lam, x);
        }
        return out;
    }

    Layout lay_;
    MatrixXd v_;
    VectorXd nhat_;
    const conic::SparseMatrix* a_ = nullptr;
    VectorXd h_;
    MatrixXd sx_;
    VectorXd gamma_;
    Eigen::LLT<MatrixXd> llt_;
};

LpStatus map_status(conic::SolveStatus s) {
    switch (s) {
    case conic::SolveStatus::Optimal:
        return LpStatus::Optimal;
    case conic::SolveStatus::Inaccurate:
        return LpStatus::Inaccurate;
    case conic::SolveStatus::PrimalInfeasible:
        return LpStatus::Infeasible;
    case conic::SolveStatus::DualInfeasible:
        return LpStatus::Unbounded;
    default:
        return LpStatus::Failed;
    }
}

void check_family(const LinearAssemblage& f) {
    if (f.slope.empty() || f.slope.size() != f.offset.size()) throw ValidationError("assemblage family is empty");
    const std::size_t k = f.slope.front().size();
    const int d = f.slope.front().front().dim();
    for (std::size_t x = 0; x < f.slope.size(); ++x) {
        if (f.slope[x].size() != k || f.offset[x].size() != k) {
            throw ValidationError("assemblage family has a ragged outcome count");
        }
        for (std::size_t a = 0; a < k; ++a)
            if (f.slope[x][a].dim() != d || f.offset[x][a].dim() != d) {
                throw ValidationError("assemblage family has inconsistent dimensions");
            }
    }
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void fill_bracket(RobustnessResult& res, const StatePolytope& p) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    res.r_used = nan;
    if (res.status == LpStatus::Infeasible || res.status == LpStatus::Failed) {
        res.lower = nan;
        res.upper = nan;
        return;
    }
    if (p.kind() == PolytopeKind::Outer) {
        res.upper_only = true;
        res.lower = 0.0;
        res.upper = res.eta_tilde;
        return;
    }
    res.lower = res.eta_tilde;
    if (const auto r = p.shrinking_factor()) {
        res.r_used = *r;
        res.upper = res.eta_tilde / *r;
    } else {
        res.upper = kInf;
    }
}

} // namespace

std::string to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Inaccurate:
        return "inaccurate";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        return "unbounded";
    case LpStatus::Failed:
        return "failed";
    }
    return "unknown";
}

NoiseModel NoiseModel::local_white(const BipartiteState& rho) {
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    const MatrixXcd rb = rho.reduced_b().matrix() / static_cast<double>(da);
    MatrixXcd t = MatrixXcd::Zero(da * db, da * db);
    for (int i = 0; i < da; ++i) t.block(i * db, i * db, db, db) = rb;
    return NoiseModel{HermitianOperator(t), da, db};
}

NoiseModel NoiseModel::global_white(int dim_a, int dim_b) {
    const int n = dim_a * dim_b;
    return NoiseModel{HermitianOperator::identity(n) * (1.0 / n), dim_a, dim_b};
}

void NoiseModel::validate() const {
    if (target.dim() != dim_a * dim_b || dim_a < 1 || dim_b < 1) {
        throw ValidationError("noise target dimension does not match dA*dB");
    }
    if (std::abs(target.trace() - 1.0) > kPsdTolerance) throw ValidationError("noise target must have unit trace");
    if (target.min_eigenvalue() < -kPsdTolerance) throw ValidationError("noise target must be positive semidefinite");
}

LinearAssemblage LinearAssemblage::depolarizing(const Assemblage& a) {
    LinearAssemblage f;
    const int d = a.dim();
    for (const auto& row : a.elements()) {
        std::vector<HermitianOperator> s, o;
        for (const auto& el : row) {
            const HermitianOperator mixed = HermitianOperator::identity(d) * (el.trace() / d);
            s.push_back(el - mixed);
            o.push_back(mixed);
        }
        f.slope.push_back(std::move(s));
        f.offset.push_back(std::move(o));
    }
    return f;
}

LinearAssemblage LinearAssemblage::from_state(const BipartiteState& rho, const MeasurementSet& m,
                                              const NoiseModel& noise) {
    noise.validate();
    if (noise.dim_a != rho.dim_a() || noise.dim_b != rho.dim_b()) {
        throw ValidationError("noise model dimensions do not match the state");
    }
    const Assemblage s1 = assemblage_from_state(rho, m);
    const Assemblage s0 = assemblage_from_state(BipartiteState(noise.target, noise.dim_a, noise.dim_b), m);
    LinearAssemblage f;
    for (int x = 0; x < m.count(); ++x) {
        std::vector<HermitianOperator> s, o;
        for (int a = 0; a < m.outcomes(); ++a) {
            s.push_back(s1(a, x) - s0(a, x));
            o.push_back(s0(a, x));
        }
        f.slope.push_back(std::move(s));
        f.offset.push_back(std::move(o));
    }
    return f;
}

RobustnessResult robustness_lp(const LinearAssemblage& family, const StatePolytope& p, const LpOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    check_family(family);
    const int m = static_cast<int>(family.slope.size());
    const int k = static_cast<int>(family.slope.front().size());
    const int d = family.slope.front().front().dim();
    if (p.dim() != d) throw ValidationError("polytope dimension does not match the assemblage");
    if (p.size() == 0) throw ValidationError("polytope has no vertices");
    const int n = static_cast<int>(p.size());

    std::vector<VectorXd> vc;
    vc.reserve(n);
    for (const auto& v : p.vertices()) vc.push_back(v.coords());
    const MatrixXd q = span_basis(vc);
    const int D = static_cast<int>(q.cols());
    MatrixXd v(D, n);
    for (int l = 0; l < n; ++l) v.col(l) = q.transpose() * vc[l];

    const Layout lay(m, k, n, D);
    VectorXd nhat = VectorXd::Zero(lay.nE);
    VectorXd that = VectorXd::Zero(lay.nE);
    double off_span = 0.0;
    double scale = 1.0;
    double slope_norm = 0.0;
    for (int x = 0; x < m; ++x)
        for (int a = 0; a < k; ++a) {
            const VectorXd nc = family.slope[x][a].coords();
            const VectorXd tc = family.offset[x][a].coords();
            const VectorXd nr = q.transpose() * nc;
            const VectorXd tr = q.transpose() * tc;
            off_span = std::max({off_span, (nc - q * nr).norm(), (tc - q * tr).norm()});
            scale = std::max({scale, nc.norm(), tc.norm()});
            slope_norm = std::max(slope_norm, nc.norm());
            if (!lay.kept(x, a)) continue;
            nhat.segment(lay.erow(x, a), D) = nr;
            that.segment(lay.erow(x, a), D) = tr;
        }
    if (off_span > 1e-9 * scale) {
        throw ValidationError("assemblage does not lie in the span of the polytope vertices");
    }

    RobustnessResult res;
    if (slope_norm <= 1e-14 * scale) {
        res.status = LpStatus::Unbounded;
        res.eta_tilde = kInf;
        res.capped = true;
        res.note = "assemblage is invariant under depolarization";
        res.wall_time_s = elapsed(t0);
        return res;
    }

    conic::ConicProblem lp;
    lp.cones.orthant = lay.cols();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(lay.nE) + static_cast<std::size_t>(n) * m * k * (D + 1) +
                 static_cast<std::size_t>(n) * k * m);
    for (int r = 0; r < lay.nE; ++r)
        if (nhat(r) != 0.0) trip.emplace_back(r, 0, -nhat(r));
    for (int lam = 0; lam < n; ++lam)
        for (int x = 0; x < m; ++x)
            for (int a = 0; a < k; ++a) {
                const int c = lay.col(a, x, lam);
                if (lay.kept(x, a)) {
                    const int r0 = lay.erow(x, a);
                    for (int j = 0; j < D; ++j)
                        if (v(j, lam) != 0.0) trip.emplace_back(r0 + j, c, v(j, lam));
                }
                if (x >= 1) {
                    trip.emplace_back(lay.lrow(x, lam), c, 1.0);
                } else {
                    for (int y = 1; y < m; ++y) trip.emplace_back(lay.lrow(y, lam), c, -1.0);
                }
            }
    lp.A.resize(lay.nE + lay.nL, lay.cols());
    lp.A.setFromTriplets(trip.begin(), trip.end());
    lp.b = VectorXd::Zero(lay.nE + lay.nL);
    lp.b.head(lay.nE) = that;
    lp.c = VectorXd::Zero(lay.cols());
    lp.c(0) = -1.0;

    conic::ConicSolution sol;
    if (opt.normal == NormalMethod::Dense) {
        sol = conic::solve(lp, opt.solver);
    } else {
        StructuredNormal ns(lay, v, nhat);
        sol = conic::solve(lp, ns, opt.solver);
    }
    res.status = map_status(sol.status);
    res.iterations = sol.iterations;
    if (res.status == LpStatus::Unbounded) {
        res.eta_tilde = kInf;
        res.capped = true;
    } else if (res.status == LpStatus::Optimal || res.status == LpStatus::Inaccurate) {
        res.eta_tilde = sol.x(0);
        res.capped = res.eta_tilde > 1.0;

        double weight = 0.0;
        for (int lam = 0; lam < n; ++lam)
            for (int a = 0; a < k; ++a) weight += sol.x(lay.col(a, 0, lam));
        double expected = 0.0;
        for (int a = 0; a < k; ++a)
            expected += res.eta_tilde * family.slope[0][a].trace() + family.offset[0][a].trace();
        res.normalization_residual = std::abs(weight - expected);
        if (res.normalization_residual > 1e-8 * std::max(1.0, std::abs(expected))) {
            res.note = "hidden-state weights do not reproduce the assemblage normalisation";
        }

        if (opt.certificate) {
            const VectorXd ye = sol.y.head(lay.nE);
            SteeringCertificate cert;
            cert.y.assign(m, std::vector<HermitianOperator>(k, HermitianOperator::zero(d)));
            for (int x = 0; x < m; ++x)
                for (int a = 0; a < k; ++a)
                    if (lay.kept(x, a)) {
                        cert.y[x][a] = HermitianOperator::from_coords(q * ye.segment(lay.erow(x, a), D), d);
                    }
            double bound = -kInf;
            for (int lam = 0; lam < n; ++lam) {
                double total = 0.0;
                for (int x = 0; x < m; ++x) {
                    double best = -kInf;
                    for (int a = 0; a < k; ++a) {
                        const double val = lay.kept(x, a) ? ye.segment(lay.erow(x, a), D).dot(v.col(lam)) : 0.0;
                        best = std::max(best, val);
                    }
                    total += best;
                }
                bound = std::max(bound, total);
            }
            cert.lhs_bound = bound;
            const double eta = res.eta_tilde + 1e-6;
            double value = 0.0;
            for (int x = 0; x < m; ++x)
                for (int a = 0; a < k; ++a)
                    value += trace_product(cert.y[x][a], family.slope[x][a] * eta + family.offset[x][a]);
            cert.value_above = value;
            cert.separates = value > bound;
            res.certificate = std::move(cert);
        }
    }
    res.wall_time_s = elapsed(t0);
    return res;
}

RobustnessResult approx_robustness(const Assemblage& a, const StatePolytope& p, const LpOptions& opt) {
    RobustnessResult res = robustness_lp(LinearAssemblage::depolarizing(a), p, opt);
    fill_bracket(res, p);
    return res;
}

RobustnessResult measurement_robustness(const MeasurementSet& m, const StatePolytope& p, const LpOptions& opt) {
    return approx_robustness(assemblage_from_measurements(m), p, opt);
}

RobustnessResult state_upper_bound(const BipartiteState& rho, const MeasurementSet& m, const StatePolytope& outer,
                                   const NoiseModel& noise, const LpOptions& opt) {
    if (outer.kind() != PolytopeKind::Outer) {
        throw ValidationError("state_upper_bound needs an outer vertex set");
    }
    if (m.dim() != rho.dim_a()) throw ValidationError("measurement dimension does not match dA");
    if (outer.dim() != rho.dim_b()) throw ValidationError("polytope dimension does not match dB");
    RobustnessResult res = robustness_lp(LinearAssemblage::from_state(rho, m, noise), outer, opt);
    fill_bracket(res, outer);
    return res;
}

RobustnessResult state_lower_bound(const BipartiteState& rho, const MeasurementSet& m, double mu,
                                   const StatePolytope& inner, const NoiseModel& noise, const LpOptions& opt) {
    if (!(mu > 0.0 && mu <= 1.0)) throw ValidationError("measurement shrinking factor must lie in (0,1]");
    if (inner.kind() != PolytopeKind::Inner) throw ValidationError("state_lower_bound needs an inner polytope");
    if (m.dim() != rho.dim_a()) throw ValidationError("measurement dimension does not match dA");
    if (inner.dim() != rho.dim_b()) throw ValidationError("polytope dimension does not match dB");
    const MeasurementSet quasi = depolarize(m, 1.0 / mu);
    RobustnessResult res = robustness_lp(LinearAssemblage::from_state(rho, quasi, noise), inner, opt);
    res.r_used = std::numeric_limits<double>::quiet_NaN();
    res.upper = kInf;
    if (res.status == LpStatus::Infeasible) {
        res.eta_tilde = 0.0;
        res.lower = 0.0;
        res.note = "quasi-measurement assemblage has no decomposition at eta = 0";
    } else {
        res.lower = res.eta_tilde;
    }
    return res;
}

double measurement_shrinking_factor(const MeasurementSet& m, const FacetOptions& opt) {
    std::vector<HermitianOperator> states;
    for (const auto& row : m.elements())
        for (const auto& el : row) {
            const double t = el.trace();
            if (!(t > 0.0)) throw ValidationError("measurement element with non-positive trace");
            states.push_back(el * (1.0 / t));
        }
    const StatePolytope p = analyze(StatePolytope(m.dim(), std::move(states), PolytopeKind::Inner, "elements"), opt);
    return *p.shrinking_factor();
}

std::pair<double, double> bracket(double eta_tilde, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw ValidationError("shrinking factor must lie in (0,1]");
    return {eta_tilde, eta_tilde / r};
}

} // namespace steerlp
