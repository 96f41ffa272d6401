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
#include "steerlp/hull.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "steerlp/errors.hpp"

namespace steerlp::hull {

namespace {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct P3 {
    T x, y, z;
};

template <class T>
P3<T> sub(const P3<T>& a, const P3<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <class T>
P3<T> cross(const P3<T>& a, const P3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T dot(const P3<T>& a, const P3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Sign tests: exact for BigInt, eps-relative (signed distance) for double.
struct FloatTraits {
    double eps;
    [[nodiscard]] int sign_dist(double value, const P3<double>& n) const {
        const double len = std::sqrt(dot(n, n));
        const double dist = len > 0 ? value / len : 0.0;
        return dist > eps ? 1 : (dist < -eps ? -1 : 0);
    }
    [[nodiscard]] bool nonzero(const P3<double>& v) const { return std::sqrt(dot(v, v)) > eps; }
};

struct ExactTraits {
    [[nodiscard]] int sign_dist(const BigInt& value, const P3<BigInt>&) const { return value.sign(); }
    [[nodiscard]] bool nonzero(const P3<BigInt>& v) const { return !(v.x == 0 && v.y == 0 && v.z == 0); }
};

template <class T>
struct Face {
    int a, b, c;
    P3<T> n;
    T off;
    bool alive = true;
};

template <class T, class Traits>
std::vector<Face<T>> incremental_hull(const std::vector<P3<T>>& p, const Traits& tr) {
    const int np = static_cast<int>(p.size());
    auto make_face = [&](int a, int b, int c) {
        Face<T> f{a, b, c, cross(sub(p[b], p[a]), sub(p[c], p[a])), T{}};
        f.off = dot(f.n, p[a]);
        return f;
    };
    auto side = [&](const Face<T>& f, int q) { return tr.sign_dist(T(dot(f.n, p[q]) - f.off), f.n); };

    // Initial tetrahedron.
    int i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < np && i1 < 0; ++i)
        if (tr.nonzero(sub(p[i], p[0]))) i1 = i;
    if (i1 < 0) throw ValidationError("hull input is degenerate (all points coincide)");
    for (int i = 1; i < np && i2 < 0; ++i)
        if (tr.nonzero(cross(sub(p[i1], p[0]), sub(p[i], p[0])))) i2 = i;
    if (i2 < 0) throw ValidationError("hull input is degenerate (points are collinear)");
    {
        const Face<T> base = make_face(0, i1, i2);
        for (int i = 1; i < np && i3 < 0; ++i)
            if (side(base, i) != 0) i3 = i;
    }
    if (i3 < 0) throw ValidationError("hull input is not full-dimensional (points are coplanar)");

    std::vector<Face<T>> faces;
    std::map<std::pair<int, int>, int> edge;
    auto add_face = [&](int a, int b, int c) {
        faces.push_back(make_face(a, b, c));
        const int id = static_cast<int>(faces.size()) - 1;
        edge[{a, b}] = id;
        edge[{b, c}] = id;
        edge[{c, a}] = id;
    };
    const std::array<std::array<int, 4>, 4> tet = {{{0, i1, i2, i3}, {0, i1, i3, i2}, {0, i2, i3, i1}, {i1, i2, i3, 0}}};
    for (const auto& t : tet) {
        Face<T> f = make_face(t[0], t[1], t[2]);
        if (side(f, t[3]) > 0) add_face(t[0], t[2], t[1]);
        else add_face(t[0], t[1], t[2]);
    }

    std::vector<char> visible;
    for (int q = 1; q < np; ++q) {
        if (q == i1 || q == i2 || q == i3) continue;
        visible.assign(faces.size(), 0);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].alive && side(faces[f], q) > 0) {
                visible[f] = 1;
                any = true;
            }
        }
        if (!any) continue;
        std::vector<std::pair<int, int>> horizon;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            const Face<T>& fc = faces[f];
            const std::array<std::pair<int, int>, 3> es = {{{fc.a, fc.b}, {fc.b, fc.c}, {fc.c, fc.a}}};
            for (const auto& [u, v] : es) {
                const auto it = edge.find({v, u});
                if (it == edge.end() || !visible[it->second]) horizon.emplace_back(u, v);
            }
        }
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            Face<T>& fc = faces[f];
            fc.alive = false;
            for (const auto& e : {std::pair{fc.a, fc.b}, std::pair{fc.b, fc.c}, std::pair{fc.c, fc.a}}) {
                const auto it = edge.find(e);
                if (it != edge.end() && it->second == static_cast<int>(f)) edge.erase(it);
            }
        }
        for (const auto& [u, v] : horizon) add_face(u, v, q);
    }
    std::vector<Face<T>> out;
    for (auto& f : faces)
        if (f.alive) out.push_back(std::move(f));
    return out;
}

} // namespace

std::vector<Plane> hull3d(const std::vector<std::array<double, 3>>& pts, double eps) {
    std::vector<P3<double>> p;
    p.reserve(pts.size());
    for (const auto& a : pts) p.push_back({a[0], a[1], a[2]});
    const auto faces = incremental_hull(p, FloatTraits{eps});
    std::vector<Plane> planes;
    for (const auto& f : faces) {
        const double len = std::sqrt(dot(f.n, f.n));
        if (!(len > 0)) continue;
        const std::array<double, 3> n = {f.n.x / len, f.n.y / len, f.n.z / len};
        const double h = f.off / len;
        bool merged = false;
        for (auto& pl : planes) {
            const double dn = std::abs(pl.normal[0] - n[0]) + std::abs(pl.normal[1] - n[1]) + std::abs(pl.normal[2] - n[2]);
            if (dn <= eps * 10 && std::abs(pl.offset - h) <= eps * 10) {
                merged = true;
                break;
            }
        }
        if (!merged) planes.push_back(Plane{n, h, {}});
    }
    for (auto& pl : planes) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = pl.normal[0] * pts[i][0] + pl.normal[1] * pts[i][1] + pl.normal[2] * pts[i][2];
            if (std::abs(v - pl.offset) <= std::max(eps, 1e-12) * 10) pl.points.push_back(static_cast<int>(i));
        }
    }
    return planes;
}

std::vector<Plane> hull3d_exact(const std::vector<std::array<std::int64_t, 3>>& pts) {
    std::vector<P3<BigInt>> p;
    p.reserve(pts.size());
    for (const auto& a : pts) p.push_back({BigInt(a[0]), BigInt(a[1]), BigInt(a[2])});
    const auto faces = incremental_hull(p, ExactTraits{});
    std::map<std::tuple<BigInt, BigInt, BigInt, BigInt>, std::size_t> seen;
    std::vector<Plane> planes;
    std::vector<P3<BigInt>> normals;
    std::vector<BigInt> offsets;
    for (const auto& f : faces) {
        BigInt g = gcd(gcd(abs(f.n.x), abs(f.n.y)), abs(f.n.z));
        if (g == 0) continue;
        const P3<BigInt> n{f.n.x / g, f.n.y / g, f.n.z / g};
        const BigInt h = f.off / g;
        const auto key = std::make_tuple(n.x, n.y, n.z, h);
        if (seen.count(key)) continue;
        seen.emplace(key, planes.size());
        normals.push_back(n);
        offsets.push_back(h);
        const double nx = n.x.convert_to<double>();
        const double ny = n.y.convert_to<double>();
        const double nz = n.z.convert_to<double>();
        const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
        planes.push_back(Plane{{nx / len, ny / len, nz / len}, h.convert_to<double>() / len, {}});
    }
    for (std::size_t k = 0; k < planes.size(); ++k) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (dot(normals[k], p[i]) == offsets[k]) planes[k].points.push_back(static_cast<int>(i));
    }
    return planes;
}

std::vector<Line> hull2d(const std::vector<std::array<double, 2>>& pts, double eps) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    auto cr = [&](int o, int a, int b) {
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
    };
    std::vector<int> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], idx[i]) <= eps) --k;
        h[k++] = idx[i];
    }
    for (int i = n - 2, t = k + 1; i >= 0; --i) {
        while (k >= t && cr(h[k - 2], h[k - 1], idx[i]) <= eps) --k;
        h[k++] = idx[i];
    }
    h.resize(std::max(k - 1, 0));
    if (h.size() < 3) throw ValidationError("planar hull input is degenerate");
    std::vector<Line> lines;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const int a = h[i];
        const int b = h[(i + 1) % h.size()];
        const double dx = pts[b][0] - pts[a][0];
        const double dy = pts[b][1] - pts[a][1];
        const double len = std::hypot(dx, dy);
        Line l;
        l.normal = {dy / len, -dx / len};
        l.offset = l.normal[0] * pts[a][0] + l.normal[1] * pts[a][1];
        l.points = {a, b};
        lines.push_back(l);
    }
    return lines;
}

DoubleDescription::DoubleDescription(int dim, double zero_tol) : dim_(dim), tol_(zero_tol) {
    if (dim < 2) throw ValidationError("double description needs dimension >= 2");
}

std::vector<int> DoubleDescription::active(std::size_t i) const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = rays_[i].zero[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back(static_cast<int>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return out;
}

void DoubleDescription::add(const std::vector<Eigen::VectorXd>& rows) {
    const std::size_t first = rows_.size();
    for (const auto& r : rows) {
        if (r.size() != dim_) throw ValidationError("constraint has wrong dimension");
        const double n = r.norm();
        if (!(n > 0)) throw ValidationError("zero constraint row");
        rows_.push_back(r / n);
    }
    words_ = (rows_.size() + 63) / 64;
    for (auto& ray : rays_) ray.zero.resize(words_, 0);
    if (first == 0) {
        initialise(rows_);
        return;
    }
    for (std::size_t i = first; i < rows_.size(); ++i) insert(static_cast<int>(i));
}

void DoubleDescription::initialise(const std::vector<Eigen::VectorXd>& rows) {
    std::vector<int> chosen;
    std::vector<Eigen::VectorXd> basis;
    for (std::size_t i = 0; i < rows.size() && static_cast<int>(chosen.size()) < dim_; ++i) {
        Eigen::VectorXd v = rows[i];
        for (const auto& b : basis) v -= b.dot(v) * b;
        for (const auto& b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-6) {
            basis.push_back(v.normalized());
            chosen.push_back(static_cast<int>(i));
        }
    }
    if (static_cast<int>(chosen.size()) < dim_) {
        throw ValidationError("vertices do not span the full state space (degenerate polytope)");
    }
    Eigen::MatrixXd Q(dim_, dim_);
    for (int i = 0; i < dim_; ++i) Q.row(i) = rows[chosen[i]].transpose();
    const Eigen::MatrixXd inv = Q.inverse();
    rays_.clear();
    for (int i = 0; i < dim_; ++i) {
        Ray r;
        r.r = inv.col(i).normalized();
        r.zero.assign(words_, 0);
        for (int j = 0; j < dim_; ++j)
            if (j != i) r.zero[chosen[j] / 64] |= std::uint64_t{1} << (chosen[j] % 64);
        rays_.push_back(std::move(r));
    }
    std::vector<char> used(rows.size(), 0);
    for (int c : chosen) used[c] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!used[i]) insert(static_cast<int>(i));
}

bool DoubleDescription::adjacent(const std::vector<std::uint64_t>& common) const {
    std::vector<int> idx;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = common[w];
        while (bits) {
            idx.push_back(static_cast<int>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    Eigen::MatrixXd Z(static_cast<Eigen::Index>(idx.size()), dim_);
    for (std::size_t i = 0; i < idx.size(); ++i) Z.row(static_cast<Eigen::Index>(i)) = rows_[idx[i]].transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    qr.setThreshold(1e-8);
    return qr.rank() == dim_ - 2;
}

Eigen::VectorXd DoubleDescription::purify(const std::vector<std::uint64_t>& zero, const Eigen::VectorXd& guess) const {
    std::vector<int> idx;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = zero[w];
        while (bits) {
            idx.push_back(static_cast<int>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    if (static_cast<int>(idx.size()) < dim_ - 1) return guess.normalized();
    Eigen::MatrixXd Z(static_cast<Eigen::Index>(idx.size()), dim_);
    for (std::size_t i = 0; i < idx.size(); ++i) Z.row(static_cast<Eigen::Index>(i)) = rows_[idx[i]].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(dim_ - 1);
    if (v.dot(guess) < 0) v = -v;
    if ((v - guess.normalized()).norm() > 1e-6) return guess.normalized();
    return v;
}

void DoubleDescription::insert(int idx) {
    const Eigen::VectorXd& h = rows_[idx];
    const std::size_t nr = rays_.size();
    std::vector<double> val(nr);
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < nr; ++i) {
        val[i] = h.dot(rays_[i].r);
        if (val[i] > tol_) pos.push_back(static_cast<int>(i));
        else if (val[i] < -tol_) neg.push_back(static_cast<int>(i));
    }
    const std::uint64_t bit = std::uint64_t{1} << (idx % 64);
    const std::size_t word = static_cast<std::size_t>(idx / 64);
    if (neg.empty()) {
        for (std::size_t i = 0; i < nr; ++i)
            if (std::abs(val[i]) <= tol_) rays_[i].zero[word] |= bit;
        return;
    }
    std::vector<Ray> created;
    std::vector<std::uint64_t> common(words_);
    for (int p : pos) {
        for (int n : neg) {
            int cnt = 0;
            for (std::size_t w = 0; w < words_; ++w) {
                common[w] = rays_[p].zero[w] & rays_[n].zero[w];
                cnt += std::popcount(common[w]);
            }
            if (cnt < dim_ - 2 || !adjacent(common)) continue;
            Ray r;
            r.zero = common;
            r.zero[word] |= bit;
            const Eigen::VectorXd comb = val[p] * rays_[n].r - val[n] * rays_[p].r;
            r.r = purify(r.zero, comb);
            created.push_back(std::move(r));
        }
    }
    std::vector<Ray> kept;
    kept.reserve(nr - neg.size() + created.size());
    for (std::size_t i = 0; i < nr; ++i) {
        if (val[i] < -tol_) continue;
        if (val[i] <= tol_) rays_[i].zero[word] |= bit;
        kept.push_back(std::move(rays_[i]));
    }
    for (auto& r : created) kept.push_back(std::move(r));
    rays_ = std::move(kept);
}

} // namespace steerlp::hull
