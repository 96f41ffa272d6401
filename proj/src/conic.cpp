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
#include "steerlp/conic.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <cstdio>
#include <limits>

#include "steerlp/errors.hpp"
#include "steerlp/hermitian.hpp"

namespace steerlp::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Offsets {
    std::vector<int> soc;
    std::vector<int> psd;
};

Offsets offsets(const ConeLayout& k) {
    Offsets o;
    int at = k.orthant;
    for (int n : k.soc) {
        o.soc.push_back(at);
        at += n;
    }
    for (int d : k.psd) {
        o.psd.push_back(at);
        at += d * d;
    }
    return o;
}

MatrixXcd to_mat(const VectorXd& v, int off, int d) { return basis::from_coords(v.segment(off, d * d), d); }

void put_mat(VectorXd& v, int off, const MatrixXcd& m) { v.segment(off, m.rows() * m.rows()) = basis::coords(m); }

// Smallest positive alpha with u + alpha d on the SOC boundary, for u interior.
double soc_step(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& d) {
    const double a = d(0) * d(0) - d.tail(d.size() - 1).squaredNorm();
    const double b = u(0) * d(0) - u.tail(u.size() - 1).dot(d.tail(d.size() - 1));
    const double c = std::max(u(0) * u(0) - u.tail(u.size() - 1).squaredNorm(), 0.0);
    const double disc = b * b - a * c;
    if (disc < 0.0) return kInf;
    const double den = -b + std::sqrt(disc);
    if (den <= 0.0) return kInf;
    return c / den;
}

} // namespace

int ConeLayout::size() const {
    int n = orthant;
    for (int s : soc) n += s;
    for (int d : psd) n += d * d;
    return n;
}

int ConeLayout::degree() const {
    int n = orthant + static_cast<int>(soc.size());
    for (int d : psd) n += d;
    return n;
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Inaccurate: return "optimal_inaccurate";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::DualInfeasible: return "dual_infeasible";
    case SolveStatus::IterationLimit: return "iteration_limit";
    case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

double min_cone_eigenvalue(const ConeLayout& k, const VectorXd& x) {
    double m = kInf;
    if (k.orthant > 0) m = x.head(k.orthant).minCoeff();
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        m = std::min(m, x(o.soc[i]) - x.segment(o.soc[i] + 1, n - 1).norm());
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(to_mat(x, o.psd[i], k.psd[i]), Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues()(0));
    }
    return m;
}

Scaling::Scaling(const ConeLayout& cones, const VectorXd& x, const VectorXd& s) : cones_(&cones) {
    lambda_.resize(cones.size());
    const int no = cones.orthant;
    w_orth_ = (x.head(no).array() / s.head(no).array()).sqrt();
    lambda_.head(no) = (x.head(no).array() * s.head(no).array()).sqrt();

    const Offsets o = offsets(cones);
    soc_.resize(cones.soc.size());
    for (std::size_t i = 0; i < cones.soc.size(); ++i) {
        const int n = cones.soc[i];
        const auto xs = x.segment(o.soc[i], n);
        const auto ss = s.segment(o.soc[i], n);
        const double a = std::sqrt(std::max(xs(0) * xs(0) - xs.tail(n - 1).squaredNorm(), 1e-300));
        const double b = std::sqrt(std::max(ss(0) * ss(0) - ss.tail(n - 1).squaredNorm(), 1e-300));
        const VectorXd xb = xs / a;
        const VectorXd sb = ss / b;
        const double c = std::sqrt(std::max((xb.dot(sb) + 1.0) * 0.5, 1e-300));
        VectorXd wb = xb;
        wb(0) += sb(0);
        wb.tail(n - 1) -= sb.tail(n - 1);
        wb /= 2.0 * c;
        VectorXd v = wb;
        v(0) += 1.0;
        v /= std::sqrt(2.0 * (wb(0) + 1.0));
        soc_[i].beta = std::sqrt(a / b);
        soc_[i].v = v;
    }

    psd_.resize(cones.psd.size());
    for (std::size_t i = 0; i < cones.psd.size(); ++i) {
        const int d = cones.psd[i];
        const MatrixXcd X = to_mat(x, o.psd[i], d);
        const MatrixXcd S = to_mat(s, o.psd[i], d);
        // Symmetric square-root factors tolerate iterates whose smallest
        // eigenvalues have been rounded to (or just below) zero.
        auto factor = [](const MatrixXcd& m, MatrixXcd& l, MatrixXcd& l_inv) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
            const double top = es.eigenvalues().maxCoeff();
            if (!(top > 0.0)) throw SolverError("PSD iterate left the cone interior");
            const VectorXd ev = es.eigenvalues().cwiseMax(1e-15 * top);
            l = es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
            l_inv = ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
        };
        MatrixXcd L1, L1_inv, L2, L2_inv;
        factor(X, L1, L1_inv);
        factor(S, L2, L2_inv);
        Eigen::JacobiSVD<MatrixXcd> svd(L2.adjoint() * L1, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const VectorXd lam = svd.singularValues();
        const VectorXd isq = lam.array().rsqrt();
        const VectorXd sq = lam.array().sqrt();
        PsdBlock blk;
        blk.r = L1 * svd.matrixV() * isq.asDiagonal();
        blk.r_inv = sq.asDiagonal() * svd.matrixV().adjoint() * L1_inv;
        blk.lam = lam;
        psd_[i] = std::move(blk);
    }
    // lambda = W s computed per block so that it is exactly diagonal on PSD blocks.
    for (std::size_t i = 0; i < cones.soc.size(); ++i) {
        const int n = cones.soc[i];
        const VectorXd& v = soc_[i].v;
        const auto ss = s.segment(o.soc[i], n);
        VectorXd js = -ss;
        js(0) = ss(0);
        lambda_.segment(o.soc[i], n) = soc_[i].beta * (2.0 * v * v.dot(ss) - js);
    }
    for (std::size_t i = 0; i < cones.psd.size(); ++i) {
        const int d = cones.psd[i];
        MatrixXcd lm = MatrixXcd::Zero(d, d);
        for (int j = 0; j < d; ++j) lm(j, j) = psd_[i].lam(j);
        put_mat(lambda_, o.psd[i], lm);
    }
}

VectorXd Scaling::orthant_h() const { return w_orth_.array().square(); }

VectorXd Scaling::apply_w(const VectorXd& v) const {
    const ConeLayout& k = *cones_;
    VectorXd out(v.size());
    out.head(k.orthant) = v.head(k.orthant).cwiseProduct(w_orth_);
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        const auto vs = v.segment(o.soc[i], n);
        VectorXd jv = -vs;
        jv(0) = vs(0);
        // W = beta (2 v v' - J) maps s to lambda; apply to v as in the lambda computation.
        out.segment(o.soc[i], n) = soc_[i].beta * (2.0 * soc_[i].v * soc_[i].v.dot(vs) - jv);
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const MatrixXcd& r = psd_[i].r;
        put_mat(out, o.psd[i], r.adjoint() * to_mat(v, o.psd[i], k.psd[i]) * r);
    }
    return out;
}

VectorXd Scaling::apply_w_inv_t(const VectorXd& v) const {
    const ConeLayout& k = *cones_;
    VectorXd out(v.size());
    out.head(k.orthant) = v.head(k.orthant).cwiseQuotient(w_orth_);
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        const auto vs = v.segment(o.soc[i], n);
        // W^{-1} = (2 Jv v'J - J) / beta
        VectorXd jvv = -soc_[i].v;
        jvv(0) = soc_[i].v(0);
        VectorXd jx = -vs;
        jx(0) = vs(0);
        out.segment(o.soc[i], n) = (2.0 * jvv * jvv.dot(vs) - jx) / soc_[i].beta;
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const MatrixXcd& ri = psd_[i].r_inv;
        put_mat(out, o.psd[i], ri * to_mat(v, o.psd[i], k.psd[i]) * ri.adjoint());
    }
    return out;
}

VectorXd Scaling::apply_w_t(const VectorXd& v) const {
    const ConeLayout& k = *cones_;
    VectorXd out(v.size());
    out.head(k.orthant) = v.head(k.orthant).cwiseProduct(w_orth_);
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        const auto vs = v.segment(o.soc[i], n);
        VectorXd jv = -vs;
        jv(0) = vs(0);
        out.segment(o.soc[i], n) = soc_[i].beta * (2.0 * soc_[i].v * soc_[i].v.dot(vs) - jv);
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const MatrixXcd& r = psd_[i].r;
        put_mat(out, o.psd[i], r * to_mat(v, o.psd[i], k.psd[i]) * r.adjoint());
    }
    return out;
}

VectorXd Scaling::apply_h(const VectorXd& v) const {
    const ConeLayout& k = *cones_;
    VectorXd out(v.size());
    out.head(k.orthant) = v.head(k.orthant).cwiseProduct(w_orth_.cwiseAbs2());
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        out.segment(o.soc[i], n) = soc_h(static_cast<int>(i)) * v.segment(o.soc[i], n);
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const MatrixXcd rr = psd_[i].r * psd_[i].r.adjoint();
        put_mat(out, o.psd[i], rr * to_mat(v, o.psd[i], k.psd[i]) * rr);
    }
    return out;
}

MatrixXd Scaling::soc_h(int i) const {
    const VectorXd& v = soc_[i].v;
    const int n = static_cast<int>(v.size());
    // W^2 = beta^2 (2 w w' - J) with w = Q_v e the unit scaling point.
    VectorXd w = 2.0 * v * v(0);
    w(0) -= 1.0;
    MatrixXd h = 2.0 * w * w.transpose();
    h(0, 0) -= 1.0;
    for (int j = 1; j < n; ++j) h(j, j) += 1.0;
    return soc_[i].beta * soc_[i].beta * h;
}

MatrixXd Scaling::psd_h(int i) const {
    const int d = cones_->psd[i];
    const MatrixXcd rr = psd_[i].r * psd_[i].r.adjoint();
    MatrixXd h(d * d, d * d);
    for (int j = 0; j < d * d; ++j) h.col(j) = basis::coords(rr * basis::element(j, d) * rr);
    return 0.5 * (h + h.transpose());
}

VectorXd Scaling::product(const VectorXd& u, const VectorXd& v) const {
    const ConeLayout& k = *cones_;
    VectorXd out(u.size());
    out.head(k.orthant) = u.head(k.orthant).cwiseProduct(v.head(k.orthant));
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        const auto us = u.segment(o.soc[i], n);
        const auto vs = v.segment(o.soc[i], n);
        out(o.soc[i]) = us.dot(vs);
        out.segment(o.soc[i] + 1, n - 1) = us(0) * vs.tail(n - 1) + vs(0) * us.tail(n - 1);
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const int d = k.psd[i];
        const MatrixXcd U = to_mat(u, o.psd[i], d);
        const MatrixXcd V = to_mat(v, o.psd[i], d);
        put_mat(out, o.psd[i], 0.5 * (U * V + V * U));
    }
    return out;
}

VectorXd Scaling::divide(const VectorXd& r) const {
    const ConeLayout& k = *cones_;
    VectorXd out(r.size());
    out.head(k.orthant) = r.head(k.orthant).cwiseQuotient(lambda_.head(k.orthant));
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        const auto l = lambda_.segment(o.soc[i], n);
        const auto rs = r.segment(o.soc[i], n);
        const double det = l(0) * l(0) - l.tail(n - 1).squaredNorm();
        const double z0 = (l(0) * rs(0) - l.tail(n - 1).dot(rs.tail(n - 1))) / det;
        out(o.soc[i]) = z0;
        out.segment(o.soc[i] + 1, n - 1) = (rs.tail(n - 1) - z0 * l.tail(n - 1)) / l(0);
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const int d = k.psd[i];
        const VectorXd& lam = psd_[i].lam;
        MatrixXcd z = to_mat(r, o.psd[i], d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) z(a, b) *= 2.0 / (lam(a) + lam(b));
        put_mat(out, o.psd[i], z);
    }
    return out;
}

double Scaling::max_step(const VectorXd& d) const {
    const ConeLayout& k = *cones_;
    double alpha = kInf;
    for (int i = 0; i < k.orthant; ++i) {
        if (d(i) < 0.0) alpha = std::min(alpha, -lambda_(i) / d(i));
    }
    const Offsets o = offsets(k);
    for (std::size_t i = 0; i < k.soc.size(); ++i) {
        const int n = k.soc[i];
        alpha = std::min(alpha, soc_step(lambda_.segment(o.soc[i], n), d.segment(o.soc[i], n)));
    }
    for (std::size_t i = 0; i < k.psd.size(); ++i) {
        const int dim = k.psd[i];
        const VectorXd isq = psd_[i].lam.array().rsqrt();
        const MatrixXcd m = isq.asDiagonal() * to_mat(d, o.psd[i], dim) * isq.asDiagonal();
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()(0);
        if (lo < 0.0) alpha = std::min(alpha, -1.0 / lo);
    }
    return alpha;
}

VectorXd Scaling::identity() const {
    const ConeLayout& k = *cones_;
    VectorXd e = VectorXd::Zero(k.size());
    e.head(k.orthant).setOnes();
    const Offsets o = offsets(k);
    for (int off : o.soc) e(off) = 1.0;
    for (std::size_t i = 0; i < k.psd.size(); ++i) e(o.psd[i]) = std::sqrt(static_cast<double>(k.psd[i]));
    return e;
}

void DenseNormalSolver::prepare(const ConicProblem& p) {
    prepared_for_ = &p;
    rows_.clear();
    slices_.clear();
    const ConeLayout& k = p.cones;
    const Offsets o = offsets(k);
    auto add_block = [&](int off, int n) {
        std::vector<int> rows;
        for (int j = off; j < off + n; ++j)
            for (SparseMatrix::InnerIterator it(p.A, j); it; ++it) rows.push_back(static_cast<int>(it.row()));
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        MatrixXd slice = MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n);
        for (int j = off; j < off + n; ++j)
            for (SparseMatrix::InnerIterator it(p.A, j); it; ++it) {
                const auto pos = std::lower_bound(rows.begin(), rows.end(), static_cast<int>(it.row())) - rows.begin();
                slice(pos, j - off) = it.value();
            }
        rows_.push_back(std::move(rows));
        slices_.push_back(std::move(slice));
    };
    for (std::size_t i = 0; i < k.soc.size(); ++i) add_block(o.soc[i], k.soc[i]);
    for (std::size_t i = 0; i < k.psd.size(); ++i) add_block(o.psd[i], k.psd[i] * k.psd[i]);
}

void DenseNormalSolver::factor(const ConicProblem& p, const Scaling& w) {
    if (prepared_for_ != &p) prepare(p);
    const int m = static_cast<int>(p.A.rows());
    MatrixXd M = MatrixXd::Zero(m, m);
    const ConeLayout& k = p.cones;
    const VectorXd h = w.orthant_h();
    for (int j = 0; j < k.orthant; ++j) {
        for (SparseMatrix::InnerIterator a(p.A, j); a; ++a)
            for (SparseMatrix::InnerIterator b(p.A, j); b; ++b) M(a.row(), b.row()) += h(j) * a.value() * b.value();
    }
    const int nsoc = static_cast<int>(k.soc.size());
    for (std::size_t blk = 0; blk < slices_.size(); ++blk) {
        const int bi = static_cast<int>(blk);
        const MatrixXd H = bi < nsoc ? w.soc_h(bi) : w.psd_h(bi - nsoc);
        const MatrixXd& S = slices_[blk];
        const MatrixXd contrib = S * H * S.transpose();
        const auto& rows = rows_[blk];
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < rows.size(); ++b) M(rows[a], rows[b]) += contrib(a, b);
    }
    llt_.compute(M);
    double reg = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    while (llt_.info() != Eigen::Success) {
        if (reg > 1e-2 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff())) {
            throw SolverError("normal equations are numerically singular");
        }
        MatrixXd Mr = M;
        Mr.diagonal().array() += reg;
        llt_.compute(Mr);
        reg *= 100.0;
    }
}

VectorXd DenseNormalSolver::solve(const VectorXd& rhs) const { return llt_.solve(rhs); }

namespace {

struct Direction {
    VectorXd dx, dy, ds;
    VectorXd dx_scaled, ds_scaled;
};

VectorXd apply_normal(const ConicProblem& p, const Scaling& w, const VectorXd& y) {
    const VectorXd t = p.A.transpose() * y;
    return p.A * w.apply_h(t);
}

Direction newton(const ConicProblem& p, const Scaling& w, NormalSolver& ns, const VectorXd& rp, const VectorXd& rd,
                 const VectorXd& rc, int refine) {
    Direction d;
    const VectorXd t = w.divide(rc);
    const VectorXd rhs = rp - p.A * w.apply_w_t(t) + p.A * w.apply_h(rd);
    d.dy = ns.solve(rhs);
    for (int i = 0; i < refine; ++i) {
        const VectorXd res = rhs - apply_normal(p, w, d.dy);
        if (res.norm() <= 1e-15 * (1.0 + rhs.norm())) break;
        d.dy += ns.solve(res);
    }
    d.ds = rd - p.A.transpose() * d.dy;
    d.dx = w.apply_w_t(t) - w.apply_h(d.ds);
    d.ds_scaled = w.apply_w(d.ds);
    d.dx_scaled = t - d.ds_scaled;
    return d;
}

} // namespace

ConicSolution solve(const ConicProblem& p, NormalSolver& normal, const SolverOptions& opt) {
    const ConeLayout& k = p.cones;
    const int n = k.size();
    if (p.A.cols() != n || p.c.size() != n || p.b.size() != p.A.rows()) {
        throw ValidationError("conic problem dimensions are inconsistent");
    }
    const int deg = k.degree();
    const double bnorm = p.b.norm();
    const double cnorm = p.c.norm();

    ConicSolution sol;
    // Least-squares starting point shifted into the cone interior.
    {
        const VectorXd ones = [&] {
            VectorXd e = VectorXd::Zero(n);
            e.head(k.orthant).setOnes();
            const Offsets o = offsets(k);
            for (int off : o.soc) e(off) = 1.0;
            for (std::size_t i = 0; i < k.psd.size(); ++i) e(o.psd[i]) = std::sqrt(static_cast<double>(k.psd[i]));
            return e;
        }();
        const Scaling unit(k, ones, ones);
        normal.factor(p, unit);
        const VectorXd e = unit.identity();
        VectorXd x = p.A.transpose() * normal.solve(p.b);
        VectorXd y = normal.solve(p.A * p.c);
        VectorXd s = p.c - p.A.transpose() * y;
        const double dx = std::max(-1.5 * min_cone_eigenvalue(k, x), 0.0);
        const double ds = std::max(-1.5 * min_cone_eigenvalue(k, s), 0.0);
        x += dx * e;
        s += ds * e;
        const double xs = x.dot(s);
        const double ex = e.dot(x);
        const double es = e.dot(s);
        double shx = es > 0 ? 0.5 * xs / es : 1.0;
        double shs = ex > 0 ? 0.5 * xs / ex : 1.0;
        const double floor = 1e-2 * std::max(1.0, std::max(x.cwiseAbs().maxCoeff(), s.cwiseAbs().maxCoeff()));
        if (!(shx > 0.0) || !std::isfinite(shx)) shx = floor;
        if (!(shs > 0.0) || !std::isfinite(shs)) shs = floor;
        x += shx * e;
        s += shs * e;
        if (min_cone_eigenvalue(k, x) <= 0.0) x += (floor - min_cone_eigenvalue(k, x)) * e;
        if (min_cone_eigenvalue(k, s) <= 0.0) s += (floor - min_cone_eigenvalue(k, s)) * e;
        sol.x = std::move(x);
        sol.y = std::move(y);
        sol.s = std::move(s);
    }

    VectorXd& x = sol.x;
    VectorXd& y = sol.y;
    VectorXd& s = sol.s;
    sol.status = SolveStatus::IterationLimit;
    double last_alpha = 1.0;
    for (int it = 0; it <= opt.max_iter; ++it) {
        sol.iterations = it;
        const VectorXd rp = p.b - p.A * x;
        const VectorXd aty = p.A.transpose() * y;
        const VectorXd rd = p.c - aty - s;
        const double pobj = p.c.dot(x);
        const double dobj = p.b.dot(y);
        const double mu = x.dot(s) / deg;
        sol.primal_objective = pobj;
        sol.dual_objective = dobj;
        sol.primal_residual = rp.norm() / (1.0 + bnorm);
        sol.dual_residual = rd.norm() / (1.0 + cnorm);
        sol.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        if (opt.verbose) {
            std::fprintf(stderr, "%3d  pobj % .10e  dobj % .10e  pres %.2e  dres %.2e  gap %.2e  mu %.2e\n", it, pobj,
                         dobj, sol.primal_residual, sol.dual_residual, sol.gap, mu);
        }
        if (sol.primal_residual <= opt.tol && sol.dual_residual <= opt.tol && sol.gap <= opt.tol) {
            sol.status = SolveStatus::Optimal;
            return sol;
        }
        if (dobj > 0.0 && (aty + s).norm() <= 1e-8 * dobj) {
            sol.status = SolveStatus::PrimalInfeasible;
            return sol;
        }
        if (pobj < 0.0 && (p.A * x).norm() <= 1e-8 * -pobj) {
            sol.status = SolveStatus::DualInfeasible;
            return sol;
        }
        if (dobj > 1e8 * (1.0 + cnorm) * (1.0 + bnorm) && sol.primal_residual > opt.loose_tol) {
            sol.status = SolveStatus::PrimalInfeasible;
            return sol;
        }
        if (-pobj > 1e8 * (1.0 + cnorm) * (1.0 + bnorm) && sol.dual_residual > opt.loose_tol) {
            sol.status = SolveStatus::DualInfeasible;
            return sol;
        }
        if (it == opt.max_iter || last_alpha < 1e-10) break;

        std::optional<Scaling> scaling;
        try {
            scaling.emplace(k, x, s);
            normal.factor(p, *scaling);
        } catch (const SolverError&) {
            break;
        }
        const Scaling& w = *scaling;
        const VectorXd& lam = w.lambda();
        const VectorXd e = w.identity();

        Direction aff = newton(p, w, normal, rp, rd, -w.product(lam, lam), opt.refine_steps);
        const double ap = std::min(1.0, w.max_step(aff.dx_scaled));
        const double ad = std::min(1.0, w.max_step(aff.ds_scaled));
        const double a_aff = std::min(ap, ad);
        const double mu_aff = (lam + a_aff * aff.dx_scaled).dot(lam + a_aff * aff.ds_scaled) / deg;
        const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

        const VectorXd rc = sigma * mu * e - w.product(lam, lam) - w.product(aff.dx_scaled, aff.ds_scaled);
        Direction dir = newton(p, w, normal, rp, rd, rc, opt.refine_steps);
        const double amax = std::min(w.max_step(dir.dx_scaled), w.max_step(dir.ds_scaled));
        const double alpha = std::min(1.0, opt.step_fraction * amax);
        if (!std::isfinite(alpha) || !dir.dx.allFinite() || !dir.dy.allFinite()) break;
        x += alpha * dir.dx;
        y += alpha * dir.dy;
        s += alpha * dir.ds;
        last_alpha = alpha;
    }
    if (sol.primal_residual <= opt.loose_tol && sol.dual_residual <= opt.loose_tol && sol.gap <= opt.loose_tol) {
        sol.status = SolveStatus::Inaccurate;
    } else if (sol.status != SolveStatus::IterationLimit || last_alpha < 1e-10) {
        sol.status = SolveStatus::NumericalFailure;
    }
    return sol;
}

ConicSolution solve(const ConicProblem& p, const SolverOptions& opt) {
    DenseNormalSolver ns;
    return solve(p, ns, opt);
}

} // namespace steerlp::conic
