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
#include "steerlp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steerlp/errors.hpp"

namespace steerlp {

namespace {

void check_shape(const std::vector<std::vector<HermitianOperator>>& el, int& d, int& k, const char* what) {
    if (el.empty() || el.front().empty()) {
        throw ValidationError(std::string(what) + " needs at least one setting and one outcome");
    }
    k = static_cast<int>(el.front().size());
    d = el.front().front().dim();
    for (const auto& row : el) {
        if (static_cast<int>(row.size()) != k) {
            throw ValidationError(std::string(what) + " has settings with different outcome counts");
        }
        for (const auto& e : row) {
            if (e.dim() != d) throw ValidationError(std::string(what) + " mixes operator dimensions");
        }
    }
}

HermitianOperator sum_outcomes(const std::vector<HermitianOperator>& row) {
    HermitianOperator s = HermitianOperator::zero(row.front().dim());
    for (const auto& e : row) s += e;
    return s;
}

InvariantCheck make_check(std::string name, double violation, double tol) {
    return InvariantCheck{std::move(name), violation, violation <= tol};
}

} // namespace

MeasurementSet::MeasurementSet(std::vector<std::vector<HermitianOperator>> elements)
    : elements_(std::move(elements)) {
    check_shape(elements_, d_, k_, "measurement set");
}

Assemblage::Assemblage(std::vector<std::vector<HermitianOperator>> elements) : elements_(std::move(elements)) {
    check_shape(elements_, d_, k_, "assemblage");
    reduced_ = sum_outcomes(elements_.front());
}

BipartiteState::BipartiteState(HermitianOperator rho, int dim_a, int dim_b)
    : da_(dim_a), db_(dim_b), rho_(std::move(rho)) {
    if (dim_a < 1 || dim_b < 1 || rho_.dim() != dim_a * dim_b) {
        throw ValidationError("bipartite state dimension does not match dA*dB");
    }
}

HermitianOperator BipartiteState::reduced_a() const {
    return HermitianOperator(partial_trace_b(rho_.matrix(), da_, db_));
}

HermitianOperator BipartiteState::reduced_b() const {
    return HermitianOperator(partial_trace_a(rho_.matrix(), da_, db_));
}

BipartiteState BipartiteState::maximally_entangled(int d) {
    VectorXcd phi = VectorXcd::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0;
    return BipartiteState(HermitianOperator::projector(phi), d, d);
}

BipartiteState BipartiteState::product(const HermitianOperator& rho_a, const HermitianOperator& rho_b) {
    const int da = rho_a.dim();
    const int db = rho_b.dim();
    MatrixXcd m(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = rho_a.matrix()(i, j) * rho_b.matrix();
    return BipartiteState(HermitianOperator(m), da, db);
}

HermitianOperator depolarize(const HermitianOperator& a, double eta) {
    const int d = a.dim();
    MatrixXcd out = eta * a.matrix();
    const double shift = (1.0 - eta) * a.trace() / d;
    for (int i = 0; i < d; ++i) out(i, i) += shift;
    return HermitianOperator(out);
}

HermitianOperator depolarize(const HermitianOperator& a, double eta, int d) {
    if (a.dim() != d) {
        throw ValidationError("depolarize: operator has dimension " + std::to_string(a.dim()) + ", expected " +
                              std::to_string(d));
    }
    return depolarize(a, eta);
}

MeasurementSet depolarize(const MeasurementSet& m, double eta) {
    auto el = m.elements();
    for (auto& row : el)
        for (auto& e : row) e = depolarize(e, eta);
    return MeasurementSet(std::move(el));
}

Assemblage assemblage_from_measurements(const MeasurementSet& m) {
    require_valid(m);
    const double inv_d = 1.0 / m.dim();
    std::vector<std::vector<HermitianOperator>> el(m.count());
    for (int x = 0; x < m.count(); ++x) {
        el[x].reserve(m.outcomes());
        for (int a = 0; a < m.outcomes(); ++a) el[x].push_back(m(a, x).transpose() * inv_d);
    }
    return Assemblage(std::move(el));
}

MatrixXcd partial_trace_a(const MatrixXcd& rho, int dim_a, int dim_b) {
    MatrixXcd out = MatrixXcd::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i) out += rho.block(i * dim_b, i * dim_b, dim_b, dim_b);
    return out;
}

MatrixXcd partial_trace_b(const MatrixXcd& rho, int dim_a, int dim_b) {
    MatrixXcd out(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j) out(i, j) = rho.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
}

Assemblage assemblage_from_state(const BipartiteState& rho, const MeasurementSet& m) {
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    if (m.dim() != da) {
        throw ValidationError("measurement dimension " + std::to_string(m.dim()) + " does not match dA = " +
                              std::to_string(da));
    }
    const MatrixXcd& r = rho.matrix().matrix();
    std::vector<std::vector<HermitianOperator>> el(m.count());
    for (int x = 0; x < m.count(); ++x) {
        for (int a = 0; a < m.outcomes(); ++a) {
            const MatrixXcd& mm = m(a, x).matrix();
            // sigma_{b b'} = sum_{i,l} M_{il} rho_{(l b),(i b')}
            MatrixXcd s = MatrixXcd::Zero(db, db);
            for (int i = 0; i < da; ++i)
                for (int l = 0; l < da; ++l) {
                    const cplx c = mm(i, l);
                    if (c == cplx(0.0, 0.0)) continue;
                    s += c * r.block(l * db, i * db, db, db);
                }
            el[x].emplace_back(s);
        }
    }
    return Assemblage(std::move(el));
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass; });
}

double ValidationReport::violation(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.violation;
    throw ValidationError("no invariant named " + name);
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os.precision(3);
    os << (pass() ? "pass" : "FAIL");
    for (const auto& c : checks) os << "  " << c.name << "=" << std::scientific << c.violation;
    return os.str();
}

ValidationReport validate(const MeasurementSet& m, double tol) {
    ValidationReport rep;
    rep.tolerance = tol;
    double psd = 0.0;
    double completeness = 0.0;
    const HermitianOperator id = HermitianOperator::identity(m.dim());
    for (const auto& row : m.elements()) {
        for (const auto& e : row) psd = std::max(psd, -e.min_eigenvalue());
        completeness = std::max(completeness, (sum_outcomes(row) - id).operator_norm());
    }
    rep.checks.push_back(make_check("positivity", psd, tol));
    rep.checks.push_back(make_check("completeness", completeness, tol));
    return rep;
}

ValidationReport validate(const Assemblage& s, double tol) {
    ValidationReport rep;
    rep.tolerance = tol;
    double psd = 0.0;
    double signalling = 0.0;
    for (const auto& row : s.elements()) {
        for (const auto& e : row) psd = std::max(psd, -e.min_eigenvalue());
        signalling = std::max(signalling, (sum_outcomes(row) - s.reduced()).operator_norm());
    }
    rep.checks.push_back(make_check("positivity", psd, tol));
    rep.checks.push_back(make_check("no-signalling", signalling, tol));
    rep.checks.push_back(make_check("trace", std::abs(s.reduced().trace() - 1.0), tol));
    return rep;
}

ValidationReport validate(const BipartiteState& rho, double tol) {
    ValidationReport rep;
    rep.tolerance = tol;
    rep.checks.push_back(make_check("positivity", std::max(0.0, -rho.matrix().min_eigenvalue()), tol));
    rep.checks.push_back(make_check("trace", std::abs(rho.matrix().trace() - 1.0), tol));
    return rep;
}

namespace {
template <class T>
void require_impl(const T& obj, double tol, const char* what) {
    const ValidationReport rep = validate(obj, tol);
    if (!rep.pass()) throw ValidationError(std::string("invalid ") + what + ": " + rep.summary());
}
} // namespace

void require_valid(const MeasurementSet& m, double tol) { require_impl(m, tol, "measurement set"); }
void require_valid(const Assemblage& s, double tol) { require_impl(s, tol, "assemblage"); }
void require_valid(const BipartiteState& rho, double tol) { require_impl(rho, tol, "bipartite state"); }

} // namespace steerlp
