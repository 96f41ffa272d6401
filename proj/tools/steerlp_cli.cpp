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
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>

#include "specs.hpp"
#include "steerlp/errors.hpp"
#include "steerlp/io.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/oracle.hpp"
#include "steerlp/rng.hpp"
#include "tables.hpp"

namespace fs = std::filesystem;
using namespace steerlp;
using io::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Global {
    std::string workdir = ".";
    bool no_runtime = false;
    double tol = 1e-9;
    double loose_tol = 1e-6;
    int max_iter = 200;
    double psd_tol = kPsdTolerance;
};

struct Args {
    std::string spec, measurements, polytope, state, assemblage, noise = "local";
    std::string out, json_out, csv_out, table;
    bool oracle = false, strict = false, dense = false;
    int vertex_cap = -1, oracle_max = -1;
    double mu = kNaN;
    std::uint64_t cap = kDefaultStrategyCap;
};

fs::path in_workdir(const Global& g, const std::string& p) { return fs::path(g.workdir) / p; }

conic::SolverOptions solver_options(const Global& g) {
    conic::SolverOptions s;
    s.tol = g.tol;
    s.loose_tol = g.loose_tol;
    s.max_iter = g.max_iter;
    return s;
}

LpOptions lp_options(const Global& g, const Args& a) {
    LpOptions o;
    o.solver = solver_options(g);
    o.normal = a.dense ? NormalMethod::Dense : NormalMethod::Structured;
    return o;
}

json tolerances(const Global& g) {
    return {{"solver_tol", g.tol}, {"solver_loose_tol", g.loose_tol}, {"max_iter", g.max_iter}, {"psd_tol", g.psd_tol}};
}

/// Metadata block embedded in every output file.
json meta(const Global& g, const json& config) {
    return {{"version", io::kVersion},
            {"config_hash", io::config_hash(config)},
            {"config", config},
            {"tolerances", tolerances(g)},
            {"rng", Rng::kAlgorithm}};
}

std::string meta_line(const Global& g, const json& config) { return meta(g, config).dump(); }

std::string family_of(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return "file";
    const auto i = spec.find(':');
    return i == std::string::npos ? spec : spec.substr(0, i);
}

std::int64_t seed_of(const std::string& spec) {
    if (spec.rfind("random", 0) != 0) return -1;
    const auto parts = tools::split(spec, ':');
    try {
        return std::stoll(parts.back());
    } catch (const std::exception&) {
        return -1;
    }
}

NoiseModel noise_for(const std::string& kind, const BipartiteState& rho) {
    if (kind == "local") return NoiseModel::local_white(rho);
    if (kind == "global") return NoiseModel::global_white(rho.dim_a(), rho.dim_b());
    throw ValidationError("noise must be 'local' or 'global'");
}

void write_result(const Global& g, const Args& a, const json& config, const json& result) {
    if (a.json_out.empty()) return;
    json doc = meta(g, config);
    doc["result"] = result;
    io::write_json(in_workdir(g, a.json_out), doc);
}

void append_row(const Global& g, const Args& a, const json& config, io::CsvRow row) {
    if (a.csv_out.empty()) return;
    if (g.no_runtime) row.runtime_s = kNaN;
    io::append_csv(in_workdir(g, a.csv_out), {row}, meta_line(g, config));
}

json base_config(const Global& g, const std::string& command) {
    return {{"command", command}, {"tolerances", tolerances(g)}};
}

int cmd_polytope(const Global& g, const Args& a) {
    json config = base_config(g, "polytope");
    config["spec"] = a.spec;
    config["vertex_cap"] = a.vertex_cap;
    FacetOptions f;
    f.vertex_cap = a.vertex_cap;
    const StatePolytope p = tools::make_polytope(a.spec, g.workdir, f);
    std::printf("vertices %zu facets %zu r %s kind %s\n", p.size(), p.has_facets() ? p.facets().size() : 0,
                p.shrinking_factor() ? io::format_double(*p.shrinking_factor()).c_str() : "-",
                p.kind() == PolytopeKind::Inner ? "inner" : "outer");
    if (!a.out.empty()) {
        json doc = io::to_json(p);
        doc["meta"] = meta(g, config);
        io::write_json(in_workdir(g, a.out), doc);
    }
    return 0;
}

int cmd_measure(const Global& g, const Args& a) {
    json config = base_config(g, "measure");
    config["family"] = a.spec;
    const MeasurementSet m = tools::make_measurements(a.spec, g.workdir);
    const ValidationReport rep = validate(m, g.psd_tol);
    std::printf("d %d k %d m %d valid %s\n", m.dim(), m.outcomes(), m.count(), rep.pass() ? "yes" : "no");
    if (!a.out.empty()) {
        json doc = io::to_json(m);
        doc["meta"] = meta(g, config);
        doc["validation"] = rep.summary();
        io::write_json(in_workdir(g, a.out), doc);
    }
    return 0;
}

int cmd_robustness(const Global& g, const Args& a) {
    json config = base_config(g, "robustness");
    config["measurements"] = a.measurements;
    config["polytope"] = a.polytope;
    config["oracle"] = a.oracle;
    config["cap"] = a.cap;
    config["normal"] = a.dense ? "dense" : "structured";
    const MeasurementSet m = tools::make_measurements(a.measurements, g.workdir);
    require_valid(m, g.psd_tol);
    const StatePolytope p = tools::make_polytope(a.polytope, g.workdir);
    const RobustnessResult r = measurement_robustness(m, p, lp_options(g, a));

    json result = io::to_json(r);
    double exact = kNaN;
    if (a.oracle) {
        OracleOptions oo;
        oo.cap = a.cap;
        oo.solver = solver_options(g);
        const OracleResult o = exact_robustness(m, oo);
        result["oracle"] = io::to_json(o);
        exact = o.eta;
    }
    if (family_of(a.measurements) == "planar") {
        std::vector<double> angles;
        for (const auto& s : tools::split(a.measurements.substr(7), ',')) angles.push_back(std::stod(s));
        const double pb = planar_bound(PlanarAngles(angles));
        result["planar_bound"] = pb;
        if (!a.oracle) exact = pb;
    }
    std::printf("lower %s upper %s status %s", io::format_double(r.lower).c_str(), io::format_double(r.upper).c_str(),
                to_string(r.status).c_str());
    if (std::isfinite(exact)) std::printf(" exact %s", io::format_double(exact).c_str());
    std::printf("\n");
    if (!r.note.empty()) std::fprintf(stderr, "note: %s\n", r.note.c_str());

    write_result(g, a, config, result);
    io::CsvRow row;
    row.family = family_of(a.measurements);
    row.d = m.dim();
    row.k = m.outcomes();
    row.m = m.count();
    row.polytope_id = a.polytope;
    row.r = r.r_used;
    row.method = "lp";
    row.lower = r.lower;
    row.upper = r.upper;
    row.exact = exact;
    row.runtime_s = r.wall_time_s;
    row.seed = seed_of(a.measurements);
    append_row(g, a, config, row);
    return 0;
}

int cmd_sdp(const Global& g, const Args& a) {
    json config = base_config(g, "sdp");
    config["measurements"] = a.measurements;
    config["assemblage"] = a.assemblage;
    config["cap"] = a.cap;
    OracleOptions oo;
    oo.cap = a.cap;
    oo.solver = solver_options(g);
    OracleResult o;
    io::CsvRow row;
    if (!a.assemblage.empty()) {
        const Assemblage s = io::assemblage_from_json(io::read_json(in_workdir(g, a.assemblage)));
        require_valid(s, g.psd_tol);
        o = exact_robustness(s, oo);
        row.family = "assemblage";
        row.d = s.dim();
        row.k = s.outcomes();
        row.m = s.settings();
    } else if (!a.measurements.empty()) {
        const MeasurementSet m = tools::make_measurements(a.measurements, g.workdir);
        require_valid(m, g.psd_tol);
        o = exact_robustness(m, oo);
        row.family = family_of(a.measurements);
        row.d = m.dim();
        row.k = m.outcomes();
        row.m = m.count();
        row.seed = seed_of(a.measurements);
    } else {
        throw ValidationError("sdp needs --measurements or --assemblage");
    }
    std::printf("eta %s status %s strategies %llu\n", io::format_double(o.eta).c_str(), to_string(o.status).c_str(),
                static_cast<unsigned long long>(o.strategies));
    write_result(g, a, config, io::to_json(o));
    row.polytope_id = "-";
    row.r = kNaN;
    row.method = "sdp";
    row.lower = row.upper = row.exact = o.eta;
    row.runtime_s = o.wall_time_s;
    append_row(g, a, config, row);
    return 0;
}

int cmd_state(const Global& g, const Args& a, bool upper) {
    json config = base_config(g, upper ? "state-upper" : "state-lower");
    config["state"] = a.state;
    config["measurements"] = a.measurements;
    config["polytope"] = a.polytope;
    config["noise"] = a.noise;
    if (!upper) config["mu"] = std::isfinite(a.mu) ? json(a.mu) : json(nullptr);
    const BipartiteState rho = tools::make_state(a.state, g.workdir);
    require_valid(rho, g.psd_tol);
    const MeasurementSet m = tools::make_measurements(a.measurements, g.workdir);
    require_valid(m, g.psd_tol);
    StatePolytope p = tools::make_polytope(a.polytope, g.workdir);
    const NoiseModel noise = noise_for(a.noise, rho);
    RobustnessResult r;
    double mu = kNaN;
    if (upper) {
        if (p.kind() == PolytopeKind::Inner) p = outer_from_inner(p);
        r = state_upper_bound(rho, m, p, noise, lp_options(g, a));
    } else {
        mu = std::isfinite(a.mu) ? a.mu : measurement_shrinking_factor(m);
        r = state_lower_bound(rho, m, mu, p, noise, lp_options(g, a));
    }
    json result = io::to_json(r);
    if (!upper) result["mu"] = mu;
    std::printf("%s %s status %s\n", upper ? "upper" : "lower",
                io::format_double(upper ? r.upper : r.lower).c_str(), to_string(r.status).c_str());
    if (!r.note.empty()) std::fprintf(stderr, "note: %s\n", r.note.c_str());
    write_result(g, a, config, result);
    io::CsvRow row;
    row.family = family_of(a.state);
    row.d = m.dim();
    row.k = m.outcomes();
    row.m = m.count();
    row.polytope_id = a.polytope;
    row.r = upper ? r.r_used : mu;
    row.method = upper ? "state-upper" : "state-lower";
    row.lower = r.lower;
    row.upper = r.upper;
    row.exact = kNaN;
    row.runtime_s = r.wall_time_s;
    row.seed = seed_of(a.state);
    append_row(g, a, config, row);
    return 0;
}

int cmd_table(const Global& g, const Args& a) {
    json config = base_config(g, "table");
    config["table"] = a.table;
    config["oracle_max"] = a.oracle_max;
    tools::TableOptions opt;
    opt.workers = tools::workers_from_env();
    opt.oracle_max = a.oracle_max;
    opt.runtime = !g.no_runtime;
    opt.lp = lp_options(g, a);
    opt.strategy_cap = a.cap;
    const auto rows = tools::run_table(a.table, opt);
    const std::string out = a.out.empty() ? a.table + ".csv" : a.out;
    io::write_csv(in_workdir(g, out), rows, meta_line(g, config));
    std::printf("%zu rows written to %s\n", rows.size(), out.c_str());
    return 0;
}

int cmd_validate(const Global& g, const Args& a) {
    bool ok = true;
    auto report = [&](const std::string& what, const ValidationReport& rep) {
        std::printf("%s: %s\n", what.c_str(), rep.summary().c_str());
        ok = ok && rep.pass();
    };
    int n = 0;
    if (!a.measurements.empty()) {
        report("measurements", validate(tools::make_measurements(a.measurements, g.workdir), g.psd_tol));
        ++n;
    }
    if (!a.assemblage.empty()) {
        report("assemblage", validate(io::assemblage_from_json(io::read_json(in_workdir(g, a.assemblage))), g.psd_tol));
        ++n;
    }
    if (!a.state.empty()) {
        report("state", validate(tools::make_state(a.state, g.workdir), g.psd_tol));
        ++n;
    }
    if (!a.polytope.empty()) {
        // Construction checks unit trace and, for inner sets, positivity.
        const StatePolytope p = tools::make_polytope(a.polytope, g.workdir);
        std::printf("polytope: %zu vertices, %s, ok\n", p.size(), p.kind() == PolytopeKind::Inner ? "inner" : "outer");
        ++n;
    }
    if (n == 0) throw ValidationError("validate needs at least one of --measurements, --assemblage, --state, --polytope");
    if (!ok && a.strict) throw ValidationError("validation failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polytope linear-programming bounds on measurement incompatibility and steering robustness"};
    app.set_version_flag("--version", std::string(io::kVersion));
    app.require_subcommand(1);
    Global g;
    Args a;
    app.add_option("--workdir", g.workdir, "Directory all input and output paths are relative to");
    app.add_flag("--no-runtime", g.no_runtime, "Omit runtimes from CSV output (byte-identical reruns)");
    app.add_option("--tol", g.tol, "Interior-point convergence tolerance")->check(CLI::PositiveNumber);
    app.add_option("--loose-tol", g.loose_tol, "Tolerance for accepting an inaccurate solve")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iter", g.max_iter, "Interior-point iteration limit")->check(CLI::PositiveNumber);
    app.add_option("--psd-tol", g.psd_tol, "Tolerance for positivity and normalisation checks")
        ->check(CLI::PositiveNumber);

    auto* poly = app.add_subcommand("polytope", "Generate, import or refine a state polytope and compute r");
    poly->add_option("--spec", a.spec, "e.g. rational:2:5, mub:3+refine=2, icosphere:2+poles, file.json")
        ->required();
    poly->add_option("--out", a.out, "Polytope JSON output");
    poly->add_option("--vertex-cap", a.vertex_cap, "Facet enumeration vertex cap");

    auto* meas = app.add_subcommand("measure", "Generate a measurement set");
    meas->add_option("--family", a.spec, "e.g. fibonacci-qubit:10, random-povm:20:2:4:7, planar:0,0.5")->required();
    meas->add_option("--out", a.out, "Measurement JSON output");

    auto* rob = app.add_subcommand("robustness", "Polytope LP bracket on the incompatibility robustness");
    rob->add_option("--measurements", a.measurements, "Measurement spec or JSON file")->required();
    rob->add_option("--polytope", a.polytope, "Polytope spec or JSON file")->required();
    rob->add_flag("--oracle", a.oracle, "Also run the exact conic program");
    rob->add_flag("--dense", a.dense, "Use the dense normal-equation factorisation");

    auto* sdp = app.add_subcommand("sdp", "Exact robustness over all deterministic strategies");
    sdp->add_option("--measurements", a.measurements, "Measurement spec or JSON file");
    sdp->add_option("--assemblage", a.assemblage, "Assemblage JSON file");

    auto* up = app.add_subcommand("state-upper", "Upper bound on a state's steering robustness");
    auto* lo = app.add_subcommand("state-lower", "Lower bound valid for all projective measurements");
    for (auto* s : {up, lo}) {
        s->add_option("--state", a.state, "max-entangled:D, werner:V, random:DA:DB:SEED, product:SEED or JSON")
            ->required();
        s->add_option("--measurements", a.measurements, "Measurement spec or JSON file")->required();
        s->add_option("--polytope", a.polytope, "Polytope spec or JSON file")->required();
        s->add_option("--noise", a.noise, "local (1/dA x rho_B) or global (white)")
            ->check(CLI::IsMember({"local", "global"}));
    }
    lo->add_option("--mu", a.mu, "Shrinking factor of the measurement set (computed when omitted)");

    auto* tab = app.add_subcommand("table", "Regenerate a results table or plot-data CSV");
    tab->add_option("name", a.table, "Table name")->required()->check(CLI::IsMember(tools::table_names()));
    tab->add_option("--out", a.out, "CSV output (default NAME.csv)");
    tab->add_option("--oracle-max", a.oracle_max, "Largest m for which the exact oracle runs");

    auto* val = app.add_subcommand("validate", "Check physical invariants of inputs");
    val->add_option("--measurements", a.measurements, "Measurement spec or JSON file");
    val->add_option("--assemblage", a.assemblage, "Assemblage JSON file");
    val->add_option("--state", a.state, "State spec or JSON file");
    val->add_option("--polytope", a.polytope, "Polytope spec or JSON file");
    val->add_flag("--strict", a.strict, "Exit with the validation code when a check fails");

    for (auto* s : {rob, sdp, up, lo}) {
        s->add_option("--json", a.json_out, "Result JSON output");
        s->add_option("--csv", a.csv_out, "CSV run log to append to");
    }
    for (auto* s : {rob, sdp, tab}) s->add_option("--cap", a.cap, "Deterministic strategy cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ValidationError("").exit_code();
    }

    try {
        if (*poly) return cmd_polytope(g, a);
        if (*meas) return cmd_measure(g, a);
        if (*rob) return cmd_robustness(g, a);
        if (*sdp) return cmd_sdp(g, a);
        if (*up) return cmd_state(g, a, true);
        if (*lo) return cmd_state(g, a, false);
        if (*tab) return cmd_table(g, a);
        if (*val) return cmd_validate(g, a);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
