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
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "steerlp/errors.hpp"
#include "steerlp/io.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/oracle.hpp"
#include "steerlp/polytope.hpp"
#include "steerlp/robustness.hpp"

namespace py = pybind11;
using namespace steerlp;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

/// (m, k, d, d) complex array -> elements[x][a].
std::vector<std::vector<HermitianOperator>> unpack(const CArray& arr) {
    if (arr.ndim() != 4 || arr.shape(2) != arr.shape(3))
        throw ValidationError("expected an array of shape (m, k, d, d)");
    const auto m = arr.shape(0), k = arr.shape(1), d = arr.shape(2);
    auto r = arr.unchecked<4>();
    std::vector<std::vector<HermitianOperator>> el(static_cast<std::size_t>(m));
    for (py::ssize_t x = 0; x < m; ++x)
        for (py::ssize_t a = 0; a < k; ++a) {
            MatrixXcd e(d, d);
            for (py::ssize_t i = 0; i < d; ++i)
                for (py::ssize_t j = 0; j < d; ++j) e(i, j) = r(x, a, i, j);
            el[static_cast<std::size_t>(x)].emplace_back(e);
        }
    return el;
}

CArray pack(const std::vector<std::vector<HermitianOperator>>& el) {
    const auto m = static_cast<py::ssize_t>(el.size());
    const auto k = static_cast<py::ssize_t>(el.empty() ? 0 : el[0].size());
    const py::ssize_t d = el.empty() || el[0].empty() ? 0 : el[0][0].dim();
    CArray out({m, k, d, d});
    auto w = out.mutable_unchecked<4>();
    for (py::ssize_t x = 0; x < m; ++x)
        for (py::ssize_t a = 0; a < k; ++a)
            for (py::ssize_t i = 0; i < d; ++i)
                for (py::ssize_t j = 0; j < d; ++j)
                    w(x, a, i, j) = el[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)].matrix()(i, j);
    return out;
}

MeasurementSet measurements(const CArray& arr) { return MeasurementSet(unpack(arr)); }

BipartiteState state(const MatrixXcd& rho, int da, int db) { return BipartiteState(HermitianOperator(rho), da, db); }

NoiseModel noise(const std::string& kind, const BipartiteState& rho) {
    if (kind == "local") return NoiseModel::local_white(rho);
    if (kind == "global") return NoiseModel::global_white(rho.dim_a(), rho.dim_b());
    throw ValidationError("noise must be 'local' or 'global'");
}

LpOptions lp_options(bool dense) {
    LpOptions o;
    o.normal = dense ? NormalMethod::Dense : NormalMethod::Structured;
    return o;
}

py::dict result_dict(const RobustnessResult& r) {
    py::dict d;
    d["eta_tilde"] = r.eta_tilde;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["r"] = r.r_used;
    d["status"] = to_string(r.status);
    d["upper_only"] = r.upper_only;
    d["capped"] = r.capped;
    d["wall_time_s"] = r.wall_time_s;
    d["iterations"] = r.iterations;
    d["note"] = r.note;
    if (r.certificate) {
        d["certificate"] = py::dict(py::arg("y") = pack(r.certificate->y), py::arg("lhs_bound") = r.certificate->lhs_bound,
                                    py::arg("value_above") = r.certificate->value_above,
                                    py::arg("separates") = r.certificate->separates);
    }
    return d;
}

py::dict oracle_dict(const OracleResult& r) {
    py::dict d;
    d["eta"] = r.eta;
    d["status"] = to_string(r.status);
    d["iterations"] = r.iterations;
    d["strategies"] = r.strategies;
    d["wall_time_s"] = r.wall_time_s;
    return d;
}

SphereKind sphere_kind(const std::string& s) {
    if (s == "icosphere") return SphereKind::Icosphere;
    if (s == "fibonacci") return SphereKind::Fibonacci;
    if (s == "polygon") return SphereKind::Polygon;
    throw ValidationError("sphere kind must be icosphere, fibonacci or polygon");
}

} // namespace

PYBIND11_MODULE(_steerlp, m) {
    m.doc() = "Polytope linear-programming bounds on measurement incompatibility and steering robustness";
    m.attr("__version__") = io::kVersion;

    static py::exception<Error> base(m, "SteerlpError", PyExc_RuntimeError);
    static py::exception<IoError> io_err(m, "IoError", base.ptr());
    static py::exception<ValidationError> val_err(m, "ValidationError", base.ptr());
    static py::exception<SolverError> solver_err(m, "SolverError", base.ptr());
    static py::exception<CapExceededError> cap_err(m, "CapExceededError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const IoError& e) {
            py::set_error(io_err, e.what());
        } catch (const ValidationError& e) {
            py::set_error(val_err, e.what());
        } catch (const SolverError& e) {
            py::set_error(solver_err, e.what());
        } catch (const CapExceededError& e) {
            py::set_error(cap_err, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<StatePolytope>(m, "Polytope")
        .def_property_readonly("dim", &StatePolytope::dim)
        .def("__len__", &StatePolytope::size)
        .def_property_readonly("vertices",
                               [](const StatePolytope& p) {
                                   std::vector<MatrixXcd> v;
                                   for (const auto& h : p.vertices()) v.push_back(h.matrix());
                                   return v;
                               })
        .def_property_readonly("kind",
                               [](const StatePolytope& p) { return p.kind() == PolytopeKind::Inner ? "inner" : "outer"; })
        .def_property_readonly("planar", &StatePolytope::planar)
        .def_property_readonly("shrinking_factor", &StatePolytope::shrinking_factor)
        .def_property_readonly("provenance", &StatePolytope::provenance)
        .def_property_readonly("facets",
                               [](const StatePolytope& p) {
                                   std::vector<std::pair<MatrixXcd, double>> f;
                                   if (p.has_facets())
                                       for (const auto& x : p.facets()) f.emplace_back(x.normal.matrix(), x.offset);
                                   return f;
                               })
        .def("__repr__", [](const StatePolytope& p) {
            return "<Polytope d=" + std::to_string(p.dim()) + " vertices=" + std::to_string(p.size()) + " " +
                   p.provenance() + ">";
        });

    m.def("polytope", [](int d, const std::vector<MatrixXcd>& vertices, bool outer, const std::string& provenance) {
        std::vector<HermitianOperator> v;
        for (const auto& x : vertices) v.emplace_back(x);
        return StatePolytope(d, std::move(v), outer ? PolytopeKind::Outer : PolytopeKind::Inner, provenance);
    }, py::arg("d"), py::arg("vertices"), py::arg("outer") = false, py::arg("provenance") = "python");
    m.def("rational_pure_states", &rational_pure_states, py::arg("d"), py::arg("q"));
    m.def("mub_polytope", &mub_polytope, py::arg("d"));
    m.def("sphere_polytope",
          [](const std::string& kind, int size, bool poles) { return sphere_polytope(sphere_kind(kind), size, poles); },
          py::arg("kind"), py::arg("size"), py::arg("poles") = false);
    m.def("analyze", [](const StatePolytope& p, int vertex_cap) {
        FacetOptions f;
        f.vertex_cap = vertex_cap;
        return analyze(p, f);
    }, py::arg("polytope"), py::arg("vertex_cap") = -1);
    m.def("outer_from_inner", &outer_from_inner, py::arg("polytope"));
    m.def("refine_polytope", [](const StatePolytope& p, int steps) {
        const RefinementResult r = refine_polytope(p, steps);
        std::vector<std::tuple<std::size_t, std::size_t, double>> s;
        for (const auto& x : r.steps) s.emplace_back(x.vertices, x.facets, x.r);
        return py::make_tuple(r.polytope, s);
    }, py::arg("polytope"), py::arg("steps"));
    m.def("mub_shrinking_factor", [](int d) { return mub_shrinking_factor(d); }, py::arg("d"));
    m.def("hierarchy_size", [](int t, int d) {
        const HierarchySize h = hierarchy_size(t, d);
        return py::make_tuple(h.n, h.r_lower);
    }, py::arg("t"), py::arg("d"));
    m.def("ray_shoot", [](const StatePolytope& p, const MatrixXcd& rho) { return ray_shoot(p, HermitianOperator(rho)); },
          py::arg("polytope"), py::arg("rho"));
    m.def("save_polytope", [](const StatePolytope& p, const std::string& path) { io::write_json(path, io::to_json(p)); },
          py::arg("polytope"), py::arg("path"));
    m.def("load_polytope", [](const std::string& path) { return io::polytope_from_json(io::read_json(path)); },
          py::arg("path"));

    m.def("fibonacci_qubit", [](int n) { return pack(fibonacci_qubit(n).elements()); }, py::arg("m"));
    m.def("fibonacci_qutrit", [](int n) { return pack(fibonacci_qutrit(n).elements()); }, py::arg("m"));
    m.def("planar_measurements",
          [](const std::vector<double>& a) { return pack(planar_measurements(PlanarAngles(a)).elements()); },
          py::arg("angles"));
    m.def("planar_bound", [](const std::vector<double>& a) { return planar_bound(PlanarAngles(a)); }, py::arg("angles"));
    m.def("random_projective", [](int n, int d, std::uint64_t seed) { return pack(random_projective(n, d, seed).elements()); },
          py::arg("m"), py::arg("d"), py::arg("seed"));
    m.def("random_povm",
          [](int n, int d, int k, std::uint64_t seed) { return pack(random_povm(n, d, k, seed).elements()); },
          py::arg("m"), py::arg("d"), py::arg("k"), py::arg("seed"));
    m.def("validate_measurements", [](const CArray& a, double tol) {
        const ValidationReport r = validate(measurements(a), tol);
        py::dict d;
        for (const auto& c : r.checks) d[py::str(c.name)] = c.violation;
        d["pass"] = r.pass();
        return d;
    }, py::arg("measurements"), py::arg("tol") = kPsdTolerance);

    m.def("partial_trace_a", &partial_trace_a, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def("partial_trace_b", &partial_trace_b, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def("assemblage_from_state", [](const MatrixXcd& rho, int da, int db, const CArray& meas) {
        return pack(assemblage_from_state(state(rho, da, db), measurements(meas)).elements());
    }, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("measurements"));

    m.def("measurement_robustness", [](const CArray& meas, const StatePolytope& p, bool dense) {
        const MeasurementSet ms = measurements(meas);
        require_valid(ms);
        return result_dict(measurement_robustness(ms, p, lp_options(dense)));
    }, py::arg("measurements"), py::arg("polytope"), py::arg("dense") = false);
    m.def("approx_robustness", [](const CArray& sigma, const StatePolytope& p, bool dense) {
        return result_dict(approx_robustness(Assemblage(unpack(sigma)), p, lp_options(dense)));
    }, py::arg("assemblage"), py::arg("polytope"), py::arg("dense") = false);
    m.def("exact_robustness", [](const CArray& meas, std::uint64_t cap) {
        OracleOptions o;
        o.cap = cap;
        return oracle_dict(exact_robustness(measurements(meas), o));
    }, py::arg("measurements"), py::arg("cap") = kDefaultStrategyCap);
    m.def("exact_assemblage_robustness", [](const CArray& sigma, std::uint64_t cap) {
        OracleOptions o;
        o.cap = cap;
        return oracle_dict(exact_robustness(Assemblage(unpack(sigma)), o));
    }, py::arg("assemblage"), py::arg("cap") = kDefaultStrategyCap);
    m.def("measurement_shrinking_factor", [](const CArray& meas) { return measurement_shrinking_factor(measurements(meas)); },
          py::arg("measurements"));
    m.def("state_upper_bound", [](const MatrixXcd& rho, int da, int db, const CArray& meas, const StatePolytope& outer,
                                  const std::string& nk) {
        const BipartiteState s = state(rho, da, db);
        return result_dict(state_upper_bound(s, measurements(meas), outer, noise(nk, s)));
    }, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("measurements"), py::arg("outer"),
          py::arg("noise") = "local");
    m.def("state_lower_bound", [](const MatrixXcd& rho, int da, int db, const CArray& meas, double mu,
                                  const StatePolytope& inner, const std::string& nk) {
        const BipartiteState s = state(rho, da, db);
        return result_dict(state_lower_bound(s, measurements(meas), mu, inner, noise(nk, s)));
    }, py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("measurements"), py::arg("mu"), py::arg("inner"),
          py::arg("noise") = "local");
}
