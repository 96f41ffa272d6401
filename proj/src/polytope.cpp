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
#include "steerlp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "steerlp/conic.hpp"
#include "steerlp/errors.hpp"
#include "steerlp/hull.hpp"
#include "steerlp/quantum.hpp"

namespace steerlp {

namespace {

bool is_prime(int d) {
    if (d < 2) return false;
    for (int p = 2; p * p <= d; ++p)
        if (d % p == 0) return false;
    return true;
}

int default_cap(int d) { return d == 2 ? -1 : 150; }

Facet make_facet(const MatrixXcd& f, double b) {
    const VectorXd c = basis::coords(f);
    const double s = c.cwiseAbs().maxCoeff();
    if (!(s > 0)) throw ValidationError("facet normal is zero");
    return Facet{HermitianOperator(f / s), b / s};
}

MatrixXcd pauli_combination(double x, double y, double z) {
    MatrixXcd f(2, 2);
    f << z, cplx(x, -y), cplx(x, y), -z;
    return f;
}

// Cone rows (1, -traceless coords) whose extreme rays are the facets.
Eigen::VectorXd polar_row(const HermitianOperator& v) {
    const VectorXd c = v.coords();
    Eigen::VectorXd row(c.size());
    row(0) = 1.0;
    row.tail(c.size() - 1) = -c.tail(c.size() - 1);
    return row;
}

std::vector<Facet> facets_from_rays(const hull::DoubleDescription& dd, int d, double tol) {
    std::vector<Facet> out;
    out.reserve(dd.ray_count());
    for (std::size_t i = 0; i < dd.ray_count(); ++i) {
        const Eigen::VectorXd& r = dd.ray(i);
        if (r(0) <= tol) {
            throw ValidationError("maximally mixed state is not interior to the polytope");
        }
        VectorXd c = VectorXd::Zero(d * d);
        c.tail(d * d - 1) = r.tail(d * d - 1) / r(0);
        out.push_back(make_facet(basis::from_coords(c, d), 1.0));
    }
    return out;
}

std::vector<Facet> qubit_facets(const StatePolytope& p, const FacetOptions& opt) {
    std::vector<Facet> out;
    if (p.planar()) {
        std::vector<std::array<double, 2>> pts;
        for (const auto& v : p.vertices()) {
            const auto b = bloch_vector(v);
            pts.push_back({b[0], b[2]});
        }
        for (const auto& l : hull::hull2d(pts, opt.tolerance * 1e-3)) {
            if (l.offset <= opt.tolerance) throw ValidationError("maximally mixed state is not interior to the polygon");
            out.push_back(make_facet(pauli_combination(l.normal[0], 0.0, l.normal[1]), l.offset));
        }
        return out;
    }
    std::vector<hull::Plane> planes;
    if (opt.exact) {
        const auto& ex = p.exact_vectors();
        if (ex.size() != p.size()) throw ValidationError("exact facet mode needs a rational pure-state polytope");
        std::int64_t lcm = 1;
        std::vector<std::int64_t> norms;
        for (const auto& v : ex) {
            const std::int64_t n = v[0].re * v[0].re + v[0].im * v[0].im + v[1].re * v[1].re + v[1].im * v[1].im;
            norms.push_back(n);
            lcm = std::lcm(lcm, n);
        }
        std::vector<std::array<std::int64_t, 3>> pts;
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const auto& v = ex[i];
            // v0 conj(v1)
            const std::int64_t re = v[0].re * v[1].re + v[0].im * v[1].im;
            const std::int64_t im = v[0].im * v[1].re - v[0].re * v[1].im;
            const std::int64_t s = lcm / norms[i];
            const std::int64_t z = v[0].re * v[0].re + v[0].im * v[0].im - v[1].re * v[1].re - v[1].im * v[1].im;
            pts.push_back({2 * re * s, -2 * im * s, z * s});
        }
        planes = hull::hull3d_exact(pts);
        for (auto& pl : planes) pl.offset /= static_cast<double>(lcm);
    } else {
        std::vector<std::array<double, 3>> pts;
        for (const auto& v : p.vertices()) pts.push_back(bloch_vector(v));
        planes = hull::hull3d(pts, opt.tolerance);
    }
    for (const auto& pl : planes) {
        if (pl.offset <= opt.tolerance) throw ValidationError("maximally mixed state is not interior to the polytope");
        out.push_back(make_facet(pauli_combination(pl.normal[0], pl.normal[1], pl.normal[2]), pl.offset));
    }
    return out;
}

void check_cap(const StatePolytope& p, const FacetOptions& opt) {
    const int cap = opt.vertex_cap >= 0 ? opt.vertex_cap : default_cap(p.dim());
    if (cap >= 0 && static_cast<int>(p.size()) > cap) {
        throw CapExceededError("facet enumeration vertex cap exceeded: " + std::to_string(p.size()) + " > " +
                               std::to_string(cap));
    }
}

} // namespace

StatePolytope::StatePolytope(int d, std::vector<HermitianOperator> vertices, PolytopeKind kind, std::string provenance,
                             bool planar)
    : d_(d), vertices_(std::move(vertices)), kind_(kind), provenance_(std::move(provenance)), planar_(planar) {
    if (d < 2) throw ValidationError("polytope dimension must be >= 2");
    if (vertices_.empty()) throw ValidationError("polytope has no vertices");
    if (planar_ && d != 2) throw ValidationError("planar polytopes are qubit-only");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        if (v.dim() != d) throw ValidationError("vertex " + std::to_string(i) + " has the wrong dimension");
        if (std::abs(v.trace() - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "vertex " << i << " has trace " << v.trace() << " (expected 1)";
            throw ValidationError(os.str());
        }
        if (kind_ == PolytopeKind::Inner && v.min_eigenvalue() < -kPsdTolerance) {
            throw ValidationError("vertex " + std::to_string(i) + " of an inner polytope is not positive semidefinite");
        }
        if (planar_ && std::abs(bloch_vector(v)[1]) > 1e-12) {
            throw ValidationError("vertex " + std::to_string(i) + " leaves the x-z plane");
        }
    }
}

const std::vector<Facet>& StatePolytope::facets() const {
    if (!facets_) throw ValidationError("polytope has no facet description");
    return *facets_;
}

StatePolytope StatePolytope::with_facets(std::vector<Facet> facets) const {
    StatePolytope p = *this;
    p.facets_ = std::move(facets);
    p.r_.reset();
    p.critical_.clear();
    return p;
}

StatePolytope StatePolytope::with_shrinking_factor(double r, std::vector<int> critical) const {
    if (!(r > 0.0 && r <= 1.0 + 1e-12)) throw ValidationError("shrinking factor must lie in (0, 1]");
    StatePolytope p = *this;
    p.r_ = std::min(r, 1.0);
    p.critical_ = std::move(critical);
    return p;
}

StatePolytope StatePolytope::with_exact_vectors(std::vector<std::vector<GaussInt>> v) const {
    StatePolytope p = *this;
    p.exact_ = std::move(v);
    return p;
}

StatePolytope StatePolytope::with_provenance(std::string prov) const {
    StatePolytope p = *this;
    p.provenance_ = std::move(prov);
    return p;
}

HermitianOperator bloch_state(const std::array<double, 3>& r) {
    MatrixXcd m = pauli_combination(r[0], r[1], r[2]);
    m(0, 0) += 1.0;
    m(1, 1) += 1.0;
    return HermitianOperator(0.5 * m);
}

std::array<double, 3> bloch_vector(const HermitianOperator& rho) {
    if (rho.dim() != 2) throw ValidationError("Bloch vectors are defined for qubits only");
    const MatrixXcd& m = rho.matrix();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

StatePolytope rational_pure_states(int d, int q) {
    if (d < 2) throw ValidationError("rational_pure_states needs d >= 2");
    if (q < 2) throw ValidationError("rational_pure_states needs q >= 2 (otherwise 1/d is not interior)");
    std::vector<GaussInt> entries;
    const int bound = static_cast<int>(std::floor(std::sqrt(static_cast<double>(q))));
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            if (a * a + b * b <= q) entries.push_back({a, b});
    std::sort(entries.begin(), entries.end(), [](const GaussInt& x, const GaussInt& y) {
        const auto nx = x.re * x.re + x.im * x.im;
        const auto ny = y.re * y.re + y.im * y.im;
        return std::tie(nx, x.re, x.im) < std::tie(ny, y.re, y.im);
    });

    std::set<std::vector<std::int64_t>> seen;
    std::vector<HermitianOperator> verts;
    std::vector<std::vector<GaussInt>> exact;
    std::vector<GaussInt> v(d);
    auto visit = [&]() {
        std::int64_t n = 0;
        for (const auto& z : v) n += z.re * z.re + z.im * z.im;
        if (n == 0) return;
        std::vector<std::int64_t> key;
        key.reserve(d * d + 1);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                // v_i conj(v_j)
                key.push_back(v[i].re * v[j].re + v[i].im * v[j].im);
                if (j > i) key.push_back(v[i].im * v[j].re - v[i].re * v[j].im);
            }
        key.push_back(n);
        std::int64_t g = 0;
        for (auto k : key) g = std::gcd(g, k < 0 ? -k : k);
        for (auto& k : key) k /= g;
        if (!seen.insert(key).second) return;
        VectorXcd vec(d);
        for (int i = 0; i < d; ++i) vec(i) = cplx(static_cast<double>(v[i].re), static_cast<double>(v[i].im));
        verts.push_back(HermitianOperator::projector(vec));
        exact.push_back(v);
    };
    auto rec = [&](auto&& self, int pos, std::int64_t budget) -> void {
        if (pos == d) {
            visit();
            return;
        }
        for (const auto& z : entries) {
            const std::int64_t n = z.re * z.re + z.im * z.im;
            if (n > budget) break;
            v[pos] = z;
            self(self, pos + 1, budget - n);
        }
    };
    rec(rec, 0, q);
    std::ostringstream prov;
    prov << "rational_pure_states(d=" << d << ",q=" << q << ")";
    return StatePolytope(d, std::move(verts), PolytopeKind::Inner, prov.str()).with_exact_vectors(std::move(exact));
}

StatePolytope facet_enumeration(const StatePolytope& p, const FacetOptions& opt) {
    check_cap(p, opt);
    if (p.dim() == 2) return p.with_facets(qubit_facets(p, opt));
    const int D = p.dim() * p.dim();
    hull::DoubleDescription dd(D, opt.tolerance);
    std::vector<Eigen::VectorXd> rows;
    for (const auto& v : p.vertices()) rows.push_back(polar_row(v));
    dd.add(rows);
    return p.with_facets(facets_from_rays(dd, p.dim(), opt.tolerance));
}

ShrinkingFactor shrinking_factor(const StatePolytope& p) {
    const auto& fs = p.facets();
    const int d = p.dim();
    std::vector<double> rs(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double tr = fs[i].normal.trace();
        const double num = d * fs[i].offset - tr;
        const double den = d * fs[i].normal.max_eigenvalue() - tr;
        if (!(den > 1e-14)) throw ValidationError("facet " + std::to_string(i) + " has a degenerate normal");
        if (!(num > 0.0)) throw ValidationError("maximally mixed state is not interior to facet " + std::to_string(i));
        rs[i] = num / den;
    }
    ShrinkingFactor out;
    out.r = *std::min_element(rs.begin(), rs.end());
    for (std::size_t i = 0; i < rs.size(); ++i)
        if (rs[i] <= out.r + 1e-7) out.critical.push_back(static_cast<int>(i));
    return out;
}

StatePolytope analyze(const StatePolytope& p, const FacetOptions& opt) {
    StatePolytope f = facet_enumeration(p, opt);
    const ShrinkingFactor s = shrinking_factor(f);
    return f.with_shrinking_factor(s.r, s.critical);
}

std::vector<std::vector<VectorXcd>> mub_vectors(int d) {
    if (!is_prime(d)) throw ValidationError("MUB construction needs a prime dimension, got " + std::to_string(d));
    std::vector<std::vector<VectorXcd>> bases;
    std::vector<VectorXcd> comp;
    for (int a = 0; a < d; ++a) comp.push_back(VectorXcd::Unit(d, a));
    bases.push_back(comp);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    if (d == 2) {
        for (const cplx ph : {cplx(1, 0), cplx(0, 1)}) {
            std::vector<VectorXcd> b;
            for (const double sg : {1.0, -1.0}) {
                VectorXcd v(2);
                v << s, sg * s * ph;
                b.push_back(v);
            }
            bases.push_back(b);
        }
        return bases;
    }
    for (int a = 0; a < d; ++a) {
        std::vector<VectorXcd> b;
        for (int k = 0; k < d; ++k) {
            VectorXcd v(d);
            for (int j = 0; j < d; ++j) {
                const int e = (a * j * j + k * j) % d;
                v(j) = s * std::polar(1.0, 2.0 * std::numbers::pi * e / d);
            }
            b.push_back(v);
        }
        bases.push_back(b);
    }
    return bases;
}

StatePolytope mub_polytope(int d) {
    std::vector<HermitianOperator> verts;
    for (const auto& b : mub_vectors(d))
        for (const auto& v : b) verts.push_back(HermitianOperator::projector(v));
    return StatePolytope(d, std::move(verts), PolytopeKind::Inner, "mub(d=" + std::to_string(d) + ")");
}

double mub_shrinking_factor(int d, std::uint64_t tuple_cap) {
    const auto bases = mub_vectors(d);
    const int nb = d + 1;
    std::uint64_t total = 1;
    for (int i = 0; i < nb; ++i) {
        if (total > tuple_cap / static_cast<std::uint64_t>(d) + 1) {
            throw CapExceededError("MUB tuple enumeration exceeds the cap");
        }
        total *= static_cast<std::uint64_t>(d);
    }
    if (total > tuple_cap) {
        throw CapExceededError("MUB tuple enumeration needs " + std::to_string(total) + " tuples (cap " +
                               std::to_string(tuple_cap) + ")");
    }
    std::vector<std::vector<MatrixXcd>> proj(nb);
    for (int x = 0; x < nb; ++x)
        for (const auto& v : bases[x]) proj[x].push_back(v * v.adjoint());
    double nu = std::numeric_limits<double>::infinity();
    std::vector<int> idx(nb, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        MatrixXcd s = MatrixXcd::Zero(d, d);
        for (int x = 0; x < nb; ++x) s += proj[x][idx[x]];
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s, Eigen::EigenvaluesOnly);
        nu = std::min(nu, es.eigenvalues()(0));
        for (int x = 0; x < nb; ++x) {
            if (++idx[x] < d) break;
            idx[x] = 0;
        }
    }
    nu = std::max(nu, 0.0);
    if (nu < 1e-12) nu = 0.0;
    return 1.0 / (d * (1.0 - nu) + 1.0);
}

StatePolytope outer_from_inner(const StatePolytope& p) {
    if (!p.shrinking_factor()) throw ValidationError("outer_from_inner needs a known shrinking factor");
    const double r = *p.shrinking_factor();
    std::vector<HermitianOperator> verts;
    for (const auto& v : p.vertices()) verts.push_back(depolarize(v, 1.0 / r));
    std::ostringstream prov;
    prov.precision(17);
    prov << "outer(" << p.provenance() << ",r=" << r << ")";
    return StatePolytope(p.dim(), std::move(verts), PolytopeKind::Outer, prov.str(), p.planar());
}

namespace {

std::vector<HermitianOperator> critical_projectors(const StatePolytope& p) {
    std::vector<HermitianOperator> out;
    for (int i : p.critical_facets()) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(p.facets()[i].normal.matrix());
        const VectorXd& ev = es.eigenvalues();
        const double top = ev(ev.size() - 1);
        const double scale = std::max(1.0, std::abs(top));
        for (Eigen::Index j = 0; j < ev.size(); ++j)
            if (ev(j) >= top - 1e-9 * scale) out.push_back(HermitianOperator::projector(es.eigenvectors().col(j)));
    }
    return out;
}

bool contains_vertex(const std::vector<HermitianOperator>& vs, const HermitianOperator& v) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const HermitianOperator& w) { return max_abs_diff(w.matrix(), v.matrix()) < 1e-9; });
}

} // namespace

RefinementResult refine_polytope(const StatePolytope& p, int steps, const FacetOptions& opt) {
    if (steps < 0) throw ValidationError("refinement steps must be >= 0");
    const int d = p.dim();
    const int cap = opt.vertex_cap >= 0 ? opt.vertex_cap : default_cap(d);
    RefinementResult res;
    check_cap(p, opt);

    std::unique_ptr<hull::DoubleDescription> dd;
    StatePolytope cur = p;
    auto refresh = [&](const StatePolytope& base, std::size_t first_new) {
        if (d == 2) {
            FacetOptions o = opt;
            o.exact = false;
            return analyze(base, o);
        }
        std::vector<Eigen::VectorXd> rows;
        for (std::size_t i = first_new; i < base.size(); ++i) rows.push_back(polar_row(base.vertices()[i]));
        if (!dd) dd = std::make_unique<hull::DoubleDescription>(d * d, opt.tolerance);
        dd->add(rows);
        StatePolytope f = base.with_facets(facets_from_rays(*dd, d, opt.tolerance));
        const ShrinkingFactor s = shrinking_factor(f);
        return f.with_shrinking_factor(s.r, s.critical);
    };
    cur = refresh(cur, 0);
    res.steps.push_back({cur.size(), cur.facets().size(), *cur.shrinking_factor()});
    for (int step = 0; step < steps; ++step) {
        std::vector<HermitianOperator> verts = cur.vertices();
        const std::size_t before = verts.size();
        for (const auto& v : critical_projectors(cur))
            if (!contains_vertex(verts, v)) verts.push_back(v);
        if (cap >= 0 && static_cast<int>(verts.size()) > cap) {
            res.truncated = true;
            res.message = "vertex cap " + std::to_string(cap) + " reached after " + std::to_string(step) + " steps";
            break;
        }
        std::ostringstream prov;
        prov << "refine(" << p.provenance() << ",steps=" << step + 1 << ")";
        StatePolytope next(d, std::move(verts), p.kind(), prov.str(), p.planar());
        cur = refresh(next, before);
        res.steps.push_back({cur.size(), cur.facets().size(), *cur.shrinking_factor()});
        ++res.completed;
    }
    res.polytope = cur;
    return res;
}

StatePolytope sphere_polytope(SphereKind kind, int size, bool poles) {
    std::vector<std::array<double, 3>> pts;
    std::ostringstream prov;
    bool planar = false;
    switch (kind) {
    case SphereKind::Icosphere: {
        if (size < 0 || size > 7) throw ValidationError("icosphere level must be in [0, 7]");
        const double ph = std::numbers::phi;
        std::vector<std::array<double, 3>> v = {{-1, ph, 0}, {1, ph, 0}, {-1, -ph, 0}, {1, -ph, 0},
                                                {0, -1, ph}, {0, 1, ph}, {0, -1, -ph}, {0, 1, -ph},
                                                {ph, 0, -1}, {ph, 0, 1}, {-ph, 0, -1}, {-ph, 0, 1}};
        auto unit = [](std::array<double, 3> a) {
            const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
            return std::array<double, 3>{a[0] / n, a[1] / n, a[2] / n};
        };
        for (auto& a : v) a = unit(a);
        std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
        for (int l = 0; l < size; ++l) {
            std::map<std::pair<int, int>, int> mid;
            auto midpoint = [&](int a, int b) {
                const auto key = std::minmax(a, b);
                const auto it = mid.find(key);
                if (it != mid.end()) return it->second;
                v.push_back(unit({v[a][0] + v[b][0], v[a][1] + v[b][1], v[a][2] + v[b][2]}));
                const int id = static_cast<int>(v.size()) - 1;
                mid.emplace(key, id);
                return id;
            };
            std::vector<std::array<int, 3>> nf;
            for (const auto& t : f) {
                const int a = midpoint(t[0], t[1]);
                const int b = midpoint(t[1], t[2]);
                const int c = midpoint(t[2], t[0]);
                nf.push_back({t[0], a, c});
                nf.push_back({t[1], b, a});
                nf.push_back({t[2], c, b});
                nf.push_back({a, b, c});
            }
            f = std::move(nf);
        }
        pts = std::move(v);
        prov << "icosphere(level=" << size;
        break;
    }
    case SphereKind::Fibonacci: {
        if (size < 4) throw ValidationError("Fibonacci sphere needs at least 4 points");
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < size; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / size;
            const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
            pts.push_back({rr * std::cos(ga * i), rr * std::sin(ga * i), z});
        }
        prov << "fibonacci(n=" << size;
        break;
    }
    case SphereKind::Polygon: {
        if (size < 3) throw ValidationError("polygon needs at least 3 vertices");
        for (int j = 0; j < size; ++j) {
            const double t = 2.0 * std::numbers::pi * j / size;
            pts.push_back({std::sin(t), 0.0, std::cos(t)});
        }
        planar = true;
        poles = false;
        prov << "polygon(n=" << size;
        break;
    }
    }
    if (poles) {
        for (const std::array<double, 3> pole : {std::array<double, 3>{0, 0, 1}, std::array<double, 3>{0, 0, -1}}) {
            const bool present = std::any_of(pts.begin(), pts.end(), [&](const auto& a) {
                return std::abs(a[0] - pole[0]) + std::abs(a[1] - pole[1]) + std::abs(a[2] - pole[2]) < 1e-12;
            });
            if (!present) pts.push_back(pole);
        }
        prov << ",poles";
    }
    prov << ")";
    std::vector<HermitianOperator> verts;
    for (const auto& a : pts) {
        std::array<double, 3> b = a;
        if (planar) b[1] = 0.0;
        verts.push_back(bloch_state(b));
    }
    return StatePolytope(2, std::move(verts), PolytopeKind::Inner, prov.str(), planar);
}

HierarchySize hierarchy_size(int t, int d) {
    if (t < 3) throw ValidationError("hierarchy_size needs t >= 3");
    if (d < 2) throw ValidationError("hierarchy_size needs d >= 2");
    unsigned __int128 pw = 1;
    const unsigned __int128 limit = static_cast<unsigned __int128>(~std::uint64_t{0});
    for (int i = 0; i < 2 * d - 1; ++i) {
        pw *= static_cast<unsigned>(t - 1);
        if (pw > limit * static_cast<unsigned>(t - 2) + 1) throw ValidationError("hierarchy size overflows 64 bits");
    }
    const unsigned __int128 n = (pw - 1) / static_cast<unsigned>(t - 2);
    if (n > limit) throw ValidationError("hierarchy size overflows 64 bits");
    HierarchySize h;
    h.n = static_cast<std::uint64_t>(n);
    h.r_lower = 2.0 * std::pow(std::cos(std::numbers::pi / (2.0 * t)), 4.0 * (d - 1)) - 1.0;
    return h;
}

MatrixXd span_basis(const std::vector<VectorXd>& vectors, double tol) {
    if (vectors.empty()) return MatrixXd(0, 0);
    const Eigen::Index D = vectors.front().size();
    MatrixXd g = MatrixXd::Zero(D, D);
    for (const auto& v : vectors) g.noalias() += v * v.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    const double top = es.eigenvalues().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = D - 1; i >= 0; --i)
        if (es.eigenvalues()(i) > tol * std::max(top, 1.0)) keep.push_back(i);
    MatrixXd b(D, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
    return b;
}

double ray_shoot(const StatePolytope& p, const HermitianOperator& rho) {
    const int d = p.dim();
    if (rho.dim() != d) throw ValidationError("ray_shoot: dimension mismatch");
    std::vector<VectorXd> vc;
    for (const auto& v : p.vertices()) vc.push_back(v.coords());
    const MatrixXd B = span_basis(vc);
    const VectorXd centre = HermitianOperator::identity(d).coords() / d;
    const VectorXd dir = rho.coords() - centre;
    if ((dir - B * (B.transpose() * dir)).norm() > 1e-9) return 0.0;
    if ((centre - B * (B.transpose() * centre)).norm() > 1e-9) {
        throw ValidationError("polytope does not contain the maximally mixed state");
    }
    if (dir.norm() < 1e-14) return std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(p.size());
    const int rows = static_cast<int>(B.cols());
    conic::ConicProblem lp;
    lp.cones.orthant = n + 1;
    std::vector<Eigen::Triplet<double>> trip;
    const VectorXd rd = B.transpose() * dir;
    for (int j = 0; j < rows; ++j) trip.emplace_back(j, 0, -rd(j));
    for (int l = 0; l < n; ++l) {
        const VectorXd rv = B.transpose() * vc[l];
        for (int j = 0; j < rows; ++j)
            if (rv(j) != 0.0) trip.emplace_back(j, l + 1, rv(j));
    }
    lp.A.resize(rows, n + 1);
    lp.A.setFromTriplets(trip.begin(), trip.end());
    lp.b = B.transpose() * centre;
    lp.c = VectorXd::Zero(n + 1);
    lp.c(0) = -1.0;
    const auto sol = conic::solve(lp);
    if (sol.status == conic::SolveStatus::DualInfeasible) return std::numeric_limits<double>::infinity();
    if (sol.status != conic::SolveStatus::Optimal && sol.status != conic::SolveStatus::Inaccurate) {
        throw SolverError("ray-shooting LP failed: " + conic::to_string(sol.status));
    }
    return sol.x(0);
}

} // namespace steerlp
