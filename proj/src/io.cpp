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
#include "steerlp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "steerlp/errors.hpp"

namespace steerlp::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed ") + what + ": " + e.what());
    }
}

std::vector<std::vector<HermitianOperator>> grid_from_json(const json& j, const char* what) {
    const int d = j.at("d").get<int>();
    const int k = j.at("k").get<int>();
    const int m = j.at("m").get<int>();
    const json& el = j.at("elements");
    if (!el.is_array() || static_cast<int>(el.size()) != m) {
        throw ValidationError(std::string(what) + ": elements must hold m rows");
    }
    std::vector<std::vector<HermitianOperator>> out;
    for (int x = 0; x < m; ++x) {
        if (!el[x].is_array() || static_cast<int>(el[x].size()) != k) {
            throw ValidationError(std::string(what) + ": row " + std::to_string(x) + " must hold k elements");
        }
        std::vector<HermitianOperator> row;
        for (int a = 0; a < k; ++a) {
            HermitianOperator op = operator_from_json(el[x][a]);
            if (op.dim() != d) throw ValidationError(std::string(what) + ": element dimension differs from d");
            row.push_back(std::move(op));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json grid_to_json(const std::vector<std::vector<HermitianOperator>>& g, int d, int k) {
    json el = json::array();
    for (const auto& row : g) {
        json r = json::array();
        for (const auto& op : row) r.push_back(to_json(op));
        el.push_back(std::move(r));
    }
    return json{{"d", d}, {"k", k}, {"m", g.size()}, {"elements", std::move(el)}};
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const HermitianOperator& a) {
    const int d = a.dim();
    json re = json::array(), im = json::array();
    for (int i = 0; i < d; ++i) {
        json rr = json::array(), ii = json::array();
        for (int j = 0; j < d; ++j) {
            rr.push_back(a.matrix()(i, j).real());
            ii.push_back(a.matrix()(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianOperator operator_from_json(const json& j) {
    return guarded("matrix", [&] {
        const int d = j.at("dim").get<int>();
        if (d < 1) throw ValidationError("matrix dimension must be positive");
        const json& re = j.at("re");
        const json& im = j.at("im");
        if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
            throw ValidationError("matrix must have dim rows");
        }
        MatrixXcd m(d, d);
        for (int r = 0; r < d; ++r) {
            if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d) {
                throw ValidationError("matrix must have dim columns");
            }
            for (int c = 0; c < d; ++c) m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
        }
        return HermitianOperator(m);
    });
}

json to_json(const MeasurementSet& m) { return grid_to_json(m.elements(), m.dim(), m.outcomes()); }

MeasurementSet measurements_from_json(const json& j) {
    return guarded("measurement set", [&] { return MeasurementSet(grid_from_json(j, "measurement set")); });
}

json to_json(const Assemblage& a) { return grid_to_json(a.elements(), a.dim(), a.outcomes()); }

Assemblage assemblage_from_json(const json& j) {
    return guarded("assemblage", [&] { return Assemblage(grid_from_json(j, "assemblage")); });
}

json to_json(const StatePolytope& p) {
    json j;
    j["d"] = p.dim();
    j["kind"] = p.kind() == PolytopeKind::Inner ? "inner" : "outer";
    j["planar"] = p.planar();
    j["provenance"] = p.provenance();
    json v = json::array();
    for (const auto& op : p.vertices()) v.push_back(to_json(op));
    j["vertices"] = std::move(v);
    if (p.has_facets()) {
        json f = json::array();
        for (const auto& fc : p.facets()) f.push_back(json{{"F", to_json(fc.normal)}, {"b", fc.offset}});
        j["facets"] = std::move(f);
    }
    if (const auto r = p.shrinking_factor()) {
        j["r"] = *r;
        j["critical"] = p.critical_facets();
    }
    return j;
}

StatePolytope polytope_from_json(const json& j) {
    return guarded("polytope", [&] {
        const int d = j.at("d").get<int>();
        const std::string kind = j.value("kind", std::string("inner"));
        if (kind != "inner" && kind != "outer") throw ValidationError("polytope kind must be inner or outer");
        std::vector<HermitianOperator> verts;
        for (const auto& v : j.at("vertices")) verts.push_back(operator_from_json(v));
        StatePolytope p(d, std::move(verts), kind == "inner" ? PolytopeKind::Inner : PolytopeKind::Outer,
                        j.value("provenance", std::string("imported")), j.value("planar", false));
        if (j.contains("facets") && !j.at("facets").is_null()) {
            std::vector<Facet> facets;
            for (const auto& f : j.at("facets")) {
                Facet fc{operator_from_json(f.at("F")), f.at("b").get<double>()};
                if (fc.normal.dim() != d) throw ValidationError("facet dimension differs from d");
                facets.push_back(std::move(fc));
            }
            p = p.with_facets(std::move(facets));
        }
        if (j.contains("r") && !j.at("r").is_null()) {
            std::vector<int> critical = j.value("critical", std::vector<int>{});
            p = p.with_shrinking_factor(j.at("r").get<double>(), std::move(critical));
        }
        return p;
    });
}

json to_json(const RobustnessResult& r) {
    json j{{"eta_tilde", finite_or_null(r.eta_tilde)},
           {"lower", finite_or_null(r.lower)},
           {"upper", finite_or_null(r.upper)},
           {"r", finite_or_null(r.r_used)},
           {"status", to_string(r.status)},
           {"upper_only", r.upper_only},
           {"capped", r.capped},
           {"iterations", r.iterations},
           {"normalization_residual", r.normalization_residual},
           {"wall_time_s", r.wall_time_s}};
    if (!r.note.empty()) j["note"] = r.note;
    if (r.certificate) {
        const auto& c = *r.certificate;
        json y = json::array();
        for (const auto& row : c.y) {
            json jr = json::array();
            for (const auto& op : row) jr.push_back(to_json(op));
            y.push_back(std::move(jr));
        }
        j["certificate"] = json{{"y", std::move(y)},
                                {"lhs_bound", c.lhs_bound},
                                {"value_above", c.value_above},
                                {"separates", c.separates}};
    }
    return j;
}

json to_json(const OracleResult& r) {
    return json{{"eta", finite_or_null(r.eta)},
                {"status", to_string(r.status)},
                {"iterations", r.iterations},
                {"strategies", r.strategies},
                {"wall_time_s", r.wall_time_s}};
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

std::string config_hash(const json& config) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_header() { return "family,d,k,m,polytope_id,r,method,lower,upper,exact,runtime_s,seed"; }

std::string csv_line(const CsvRow& row) {
    auto num = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
    std::ostringstream os;
    os << row.family << ',' << row.d << ',' << row.k << ',' << row.m << ',' << row.polytope_id << ',' << num(row.r)
       << ',' << row.method << ',' << num(row.lower) << ',' << num(row.upper) << ',' << num(row.exact) << ','
       << num(row.runtime_s) << ',';
    if (row.seed >= 0) os << row.seed;
    return os.str();
}

void append_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows, const std::string& meta) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoError("cannot write " + path.string());
    if (fresh) {
        if (!meta.empty()) out << "# " << meta << '\n';
        out << csv_header() << '\n';
    }
    for (const auto& r : rows) out << csv_line(r) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows, const std::string& meta) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    if (!meta.empty()) out << "# " << meta << '\n';
    out << csv_header() << '\n';
    for (const auto& r : rows) out << csv_line(r) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace steerlp::io
