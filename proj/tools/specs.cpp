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
#include "specs.hpp"

#include <cstdlib>
#include <numbers>

#include "steerlp/errors.hpp"
#include "steerlp/io.hpp"

namespace steerlp::tools {

namespace {

bool is_json_path(const std::string& s) { return s.size() > 5 && s.substr(s.size() - 5) == ".json"; }

int to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ValidationError("expected an integer for " + what + ", got '" + s + "'");
    }
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("expected a number for " + what + ", got '" + s + "'");
    }
}

void need(const std::vector<std::string>& parts, std::size_t n, const std::string& spec) {
    if (parts.size() != n) throw ValidationError("malformed spec '" + spec + "'");
}

} // namespace

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

int workers_from_env() {
    const char* v = std::getenv("STEERLP_WORKERS");
    if (!v || !*v) return 1;
    const int n = to_int(v, "STEERLP_WORKERS");
    if (n < 1) throw ValidationError("STEERLP_WORKERS must be >= 1");
    return n;
}

StatePolytope make_polytope(const std::string& spec, const std::filesystem::path& workdir, const FacetOptions& opt) {
    const auto mods = split(spec, '+');
    const std::string& base = mods.front();
    bool poles = false, outer = false;
    int refine = 0;
    for (std::size_t i = 1; i < mods.size(); ++i) {
        if (mods[i] == "poles") {
            poles = true;
        } else if (mods[i] == "outer") {
            outer = true;
        } else if (mods[i].rfind("refine=", 0) == 0) {
            refine = to_int(mods[i].substr(7), "refine");
        } else {
            throw ValidationError("unknown polytope modifier '" + mods[i] + "'");
        }
    }
    StatePolytope p;
    if (is_json_path(base)) {
        p = io::polytope_from_json(io::read_json(workdir / base));
        if (poles) throw ValidationError("the poles modifier applies to generated sphere polytopes only");
    } else {
        const auto parts = split(base, ':');
        const std::string& kind = parts.front();
        if (kind == "rational") {
            need(parts, 3, spec);
            p = rational_pure_states(to_int(parts[1], "d"), to_int(parts[2], "q"));
        } else if (kind == "mub") {
            need(parts, 2, spec);
            p = mub_polytope(to_int(parts[1], "d"));
        } else if (kind == "icosphere" || kind == "fibonacci" || kind == "polygon") {
            need(parts, 2, spec);
            const SphereKind sk = kind == "icosphere"   ? SphereKind::Icosphere
                                  : kind == "fibonacci" ? SphereKind::Fibonacci
                                                        : SphereKind::Polygon;
            p = sphere_polytope(sk, to_int(parts[1], kind), poles);
        } else {
            throw ValidationError("unknown polytope generator '" + kind + "'");
        }
    }
    if (p.kind() == PolytopeKind::Inner) {
        if (refine > 0) {
            RefinementResult rr = refine_polytope(p, refine, opt);
            if (rr.truncated) throw CapExceededError(rr.message);
            p = rr.polytope;
        } else if (!p.shrinking_factor()) {
            p = analyze(p, opt);
        }
    } else if (refine > 0) {
        throw ValidationError("outer vertex sets cannot be refined");
    }
    if (outer) {
        if (p.kind() == PolytopeKind::Outer) throw ValidationError("polytope is already an outer vertex set");
        p = outer_from_inner(p);
    }
    return p.with_provenance(spec);
}

MeasurementSet make_measurements(const std::string& spec, const std::filesystem::path& workdir) {
    if (is_json_path(spec)) return io::measurements_from_json(io::read_json(workdir / spec));
    const auto parts = split(spec, ':');
    const std::string& kind = parts.front();
    if (kind == "fibonacci-qubit") {
        need(parts, 2, spec);
        return fibonacci_qubit(to_int(parts[1], "m"));
    }
    if (kind == "fibonacci-qutrit") {
        need(parts, 2, spec);
        return fibonacci_qutrit(to_int(parts[1], "m"));
    }
    if (kind == "planar") {
        need(parts, 2, spec);
        std::vector<double> angles;
        for (const auto& a : split(parts[1], ',')) angles.push_back(to_double(a, "angle"));
        return planar_measurements(PlanarAngles(angles));
    }
    if (kind == "mub") {
        need(parts, 2, spec);
        std::vector<std::vector<HermitianOperator>> el;
        for (const auto& basis : mub_vectors(to_int(parts[1], "d"))) {
            std::vector<HermitianOperator> row;
            for (const auto& v : basis) row.push_back(HermitianOperator::projector(v));
            el.push_back(std::move(row));
        }
        return MeasurementSet(std::move(el));
    }
    if (kind == "random-projective") {
        need(parts, 4, spec);
        return random_projective(to_int(parts[1], "m"), to_int(parts[2], "d"),
                                 static_cast<std::uint64_t>(to_int(parts[3], "seed")));
    }
    if (kind == "random-povm") {
        need(parts, 5, spec);
        return random_povm(to_int(parts[1], "m"), to_int(parts[2], "d"), to_int(parts[3], "k"),
                           static_cast<std::uint64_t>(to_int(parts[4], "seed")));
    }
    throw ValidationError("unknown measurement family '" + kind + "'");
}

BipartiteState make_state(const std::string& spec, const std::filesystem::path& workdir) {
    if (is_json_path(spec)) {
        const auto j = io::read_json(workdir / spec);
        try {
            return BipartiteState(io::operator_from_json(j.at("rho")), j.at("dA").get<int>(), j.at("dB").get<int>());
        } catch (const io::json::exception& e) {
            throw ValidationError(std::string("malformed state file: ") + e.what());
        }
    }
    const auto parts = split(spec, ':');
    const std::string& kind = parts.front();
    if (kind == "max-entangled") {
        need(parts, 2, spec);
        return BipartiteState::maximally_entangled(to_int(parts[1], "d"));
    }
    if (kind == "werner") {
        need(parts, 2, spec);
        const double v = to_double(parts[1], "visibility");
        const BipartiteState phi = BipartiteState::maximally_entangled(2);
        return BipartiteState(phi.matrix() * v + HermitianOperator::identity(4) * ((1.0 - v) / 4.0), 2, 2);
    }
    if (kind == "random") {
        need(parts, 4, spec);
        const int da = to_int(parts[1], "dA");
        const int db = to_int(parts[2], "dB");
        Rng rng(static_cast<std::uint64_t>(to_int(parts[3], "seed")));
        return BipartiteState(random_state(da * db, rng), da, db);
    }
    if (kind == "product") {
        need(parts, 2, spec);
        Rng rng(static_cast<std::uint64_t>(to_int(parts[1], "seed")));
        const HermitianOperator a = random_state(2, rng);
        const HermitianOperator b = random_state(2, rng);
        return BipartiteState::product(a, b);
    }
    throw ValidationError("unknown state family '" + kind + "'");
}

} // namespace steerlp::tools
