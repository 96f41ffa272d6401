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
#include "tables.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "specs.hpp"
#include "steerlp/errors.hpp"
#include "steerlp/measurements.hpp"
#include "steerlp/oracle.hpp"

namespace steerlp::tools {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Task = std::function<io::CsvRow()>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Named {
    std::string id;
    StatePolytope p;
};

std::vector<io::CsvRow> finish(std::vector<io::CsvRow> rows, const TableOptions& opt) {
    if (!opt.runtime)
        for (auto& r : rows) r.runtime_s = kNaN;
    return rows;
}

std::vector<io::CsvRow> table2(const TableOptions& opt) {
    std::vector<std::pair<int, int>> cases;
    for (int q = 2; q <= 10; ++q) cases.emplace_back(2, q);
    for (int q = 2; q <= 3; ++q) cases.emplace_back(3, q);
    std::vector<Task> tasks;
    for (auto [d, q] : cases) {
        tasks.push_back([d, q, &opt] {
            const auto t0 = std::chrono::steady_clock::now();
            FacetOptions f = opt.facet;
            f.exact = d == 2;
            const StatePolytope p = analyze(rational_pure_states(d, q), f);
            io::CsvRow row;
            row.family = "rational";
            row.d = d;
            row.m = static_cast<int>(p.size());
            row.polytope_id = "rational:" + std::to_string(d) + ":" + std::to_string(q);
            row.r = *p.shrinking_factor();
            row.method = "facets";
            row.lower = row.upper = row.exact = kNaN;
            row.runtime_s = seconds_since(t0);
            return row;
        });
    }
    return run_parallel(tasks, opt.workers);
}

std::vector<io::CsvRow> table5(const TableOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<io::CsvRow> rows;
    auto push = [&](int step, std::size_t n, double r) {
        io::CsvRow row;
        row.family = "mub-refine";
        row.d = 3;
        row.m = static_cast<int>(n);
        row.polytope_id = "mub:3+refine=" + std::to_string(step);
        row.r = r;
        row.method = "refine";
        row.lower = row.upper = row.exact = kNaN;
        row.runtime_s = seconds_since(t0);
        rows.push_back(row);
    };
    const RefinementResult rr = refine_polytope(mub_polytope(3), 2, opt.facet);
    for (std::size_t i = 0; i < rr.steps.size(); ++i) push(static_cast<int>(i), rr.steps[i].vertices, rr.steps[i].r);
    if (rr.truncated) throw CapExceededError(rr.message);
    return rows;
}

io::CsvRow lp_row(const std::string& family, const MeasurementSet& m, const Named& poly, double exact,
                  std::int64_t seed, const TableOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const RobustnessResult r = measurement_robustness(m, poly.p, opt.lp);
    io::CsvRow row;
    row.family = family;
    row.d = m.dim();
    row.k = m.outcomes();
    row.m = m.count();
    row.polytope_id = poly.id;
    row.r = r.r_used;
    row.method = "lp";
    row.lower = r.lower;
    row.upper = r.upper;
    row.exact = exact;
    row.runtime_s = seconds_since(t0);
    row.seed = seed;
    return row;
}

/// Oracle rows for m <= oracle_max, then LP rows per polytope carrying the
/// oracle value in the exact column.
std::vector<io::CsvRow> fibonacci_table(const std::string& family, const std::vector<int>& ms,
                                        const std::vector<std::string>& polys, int oracle_max,
                                        MeasurementSet (*make)(int), const TableOptions& opt) {
    std::vector<Named> named;
    for (const auto& s : polys) named.push_back({s, make_polytope(s, ".", opt.facet)});

    std::vector<Task> oracle_tasks;
    std::vector<int> oracle_ms;
    for (int m : ms) {
        if (m > oracle_max) continue;
        oracle_ms.push_back(m);
        oracle_tasks.push_back([m, make, &family, &opt] {
            const MeasurementSet set = make(m);
            OracleOptions oo;
            oo.cap = opt.strategy_cap;
            oo.solver = opt.lp.solver;
            const OracleResult r = exact_robustness(set, oo);
            io::CsvRow row;
            row.family = family;
            row.d = set.dim();
            row.k = set.outcomes();
            row.m = m;
            row.polytope_id = "-";
            row.r = kNaN;
            row.method = "sdp";
            row.lower = row.upper = row.exact = r.eta;
            row.runtime_s = r.wall_time_s;
            return row;
        });
    }
    std::vector<io::CsvRow> rows = run_parallel(oracle_tasks, opt.workers);
    auto exact_for = [&](int m) {
        for (std::size_t i = 0; i < oracle_ms.size(); ++i)
            if (oracle_ms[i] == m) return rows[i].exact;
        return kNaN;
    };

    std::vector<Task> lp_tasks;
    for (const auto& poly : named)
        for (int m : ms) {
            const double ex = exact_for(m);
            lp_tasks.push_back([&family, &poly, m, ex, make, &opt] {
                return lp_row(family, make(m), poly, ex, -1, opt);
            });
        }
    for (auto& r : run_parallel(lp_tasks, opt.workers)) rows.push_back(std::move(r));
    return rows;
}

std::vector<io::CsvRow> table3(const TableOptions& opt) {
    return fibonacci_table("fibonacci-qubit", {10, 15, 20, 50, 100, 200, 300, 400},
                           {"icosphere:2+poles", "icosphere:3+poles"}, opt.oracle_max < 0 ? 15 : opt.oracle_max,
                           &fibonacci_qubit, opt);
}

std::vector<io::CsvRow> table4(const TableOptions& opt) {
    return fibonacci_table("fibonacci-qutrit", {9, 10, 11, 20, 40, 60, 80, 100},
                           {"mub:3+refine=1", "mub:3+refine=2"}, opt.oracle_max < 0 ? 9 : opt.oracle_max,
                           &fibonacci_qutrit, opt);
}

std::vector<io::CsvRow> fig5(const TableOptions& opt) {
    const Named poly{"icosphere:2+poles", make_polytope("icosphere:2+poles", ".", opt.facet)};
    std::vector<Task> tasks;
    for (int m : {10, 20, 30})
        for (int seed = 0; seed < 5; ++seed) {
            tasks.push_back([m, seed, &poly, &opt] {
                return lp_row("random-povm", random_povm(m, 2, 4, static_cast<std::uint64_t>(seed)), poly, kNaN, seed,
                              opt);
            });
            tasks.push_back([m, seed, &poly, &opt] {
                return lp_row("random-projective", random_projective(m, 2, static_cast<std::uint64_t>(seed)), poly,
                              kNaN, seed, opt);
            });
        }
    return run_parallel(tasks, opt.workers);
}

} // namespace

PlanarAngles random_planar_angles(std::uint64_t seed) {
    Rng rng(seed);
    const int m = 2 + static_cast<int>(rng.uniform() * 49.0);
    std::vector<double> a(static_cast<std::size_t>(m));
    for (double& v : a) v = rng.uniform() * std::numbers::pi;
    return PlanarAngles(a);
}

namespace {

std::vector<io::CsvRow> planar(const TableOptions& opt) {
    const Named poly{"polygon:400", make_polytope("polygon:400", ".", opt.facet)};
    std::vector<Task> tasks;
    for (int seed = 0; seed < 100; ++seed)
        tasks.push_back([seed, &poly, &opt] {
            const PlanarAngles angles = random_planar_angles(static_cast<std::uint64_t>(seed));
            io::CsvRow row = lp_row("planar", planar_measurements(angles), poly, planar_bound(angles), seed, opt);
            return row;
        });
    return run_parallel(tasks, opt.workers);
}

} // namespace

const std::vector<std::string>& table_names() {
    static const std::vector<std::string> names{"table2", "table3", "table4", "table5",
                                                "fig3",   "fig4",   "fig5",   "planar"};
    return names;
}

std::vector<io::CsvRow> run_table(const std::string& name, const TableOptions& opt) {
    if (name == "table2") return finish(table2(opt), opt);
    if (name == "table3" || name == "fig3") return finish(table3(opt), opt);
    if (name == "table4" || name == "fig4") return finish(table4(opt), opt);
    if (name == "table5") return finish(table5(opt), opt);
    if (name == "fig5") return finish(fig5(opt), opt);
    if (name == "planar") return finish(planar(opt), opt);
    throw ValidationError("unknown table '" + name + "'");
}

} // namespace steerlp::tools
