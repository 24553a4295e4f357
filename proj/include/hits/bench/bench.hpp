#pragma once

// Benchmark harness: builds the good/bad/random workloads, runs them through
// a selection backend and reports operation counters and timings as CSV.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hits/errors.hpp"
#include "hits/hermite/integrator.hpp"
#include "hits/hermite/plummer.hpp"
#include "hits/hermite/snapshot.hpp"
#include "hits/scheduler.hpp"

namespace hits::bench {

enum class Scenario { Good, Bad, Random };

constexpr std::string_view to_string(Scenario s) noexcept {
    switch (s) {
    case Scenario::Good: return "good";
    case Scenario::Bad: return "bad";
    case Scenario::Random: return "random";
    }
    return "?";
}

inline Scenario parse_scenario(std::string_view name) {
    for (auto s : {Scenario::Good, Scenario::Bad, Scenario::Random}) {
        if (to_string(s) == name)
            return s;
    }
    throw Error(ErrorCode::BadParameter, "unknown scenario '" + std::string(name) + "'");
}

// Bad-case defaults: a massive centre with a tight companion.
inline constexpr double kBadCentral = 0.01;
inline constexpr double kBadBinaryA = 1e-4;

struct RunConfig {
    std::size_t n = 1024;
    std::uint64_t seed = 1;
    double t_end = 0.25;  // time units, multiple of dt_max
    double eta = 0.01;
    double eta_s = 0.01;
    double softening = 1e-3;
    double mratio_central = 0.0;
    double binary_a = 0.0;  // 0 = no injected binary
    BackendKind backend = BackendKind::Bucket;
    std::size_t segments = 1;
    bool parallel = false;
    std::optional<Scenario> scenario;  // derived from binary_a when unset
    std::string in;                    // snapshot to start from; generated when empty
    std::string out;                   // output path; stdout when empty

    Scenario effective_scenario() const noexcept {
        if (scenario)
            return *scenario;
        return binary_a > 0.0 ? Scenario::Bad : Scenario::Good;
    }

    void validate() const {
        auto bad = [](const std::string& what) { throw Error(ErrorCode::BadParameter, what); };
        if (in.empty() && n < 2)
            bad("--n must be >= 2, got " + std::to_string(n));
        if (!(t_end > 0.0))
            bad("--t-end must be positive");
        if (!is_commensurate(TickTime::from_units(t_end), kDtMax))
            bad("--t-end must be a whole multiple of 1/8");
        if (!(eta > 0.0) || !(eta_s > 0.0))
            bad("--eta and --eta-s must be positive");
        if (!(softening >= 0.0))
            bad("--eps must be non-negative");
        if (!(mratio_central >= 0.0 && mratio_central < 1.0))
            bad("--central must lie in [0, 1)");
        if (!(binary_a >= 0.0))
            bad("--binary-a must be non-negative");
        if (segments == 0)
            bad("--segments must be >= 1");
    }
};

struct BenchRow {
    Scenario scenario = Scenario::Good;
    BackendKind backend = BackendKind::Bucket;
    std::size_t n = 0;
    std::size_t segments = 1;
    std::uint64_t steps = 0;
    double mean_nact = 0.0;
    std::uint64_t elements_scanned = 0;
    std::uint64_t pnodes_scanned = 0;
    std::uint64_t tnodes_traversed = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t sync_events = 0;
    double select_seconds = 0.0;
    double force_seconds = 0.0;
    double energy_rel_drift = 0.0;
    std::uint64_t particles_selected = 0;  // not a CSV column; kept for exact identities
};

inline constexpr const char* kCsvHeader =
    "scenario,backend,n,segments,steps,mean_nact,elements_scanned,pnodes_scanned,tnodes_traversed,"
    "comparisons,sync_events,select_seconds,force_seconds,energy_rel_drift";

namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace detail

inline std::string csv_line(const BenchRow& r) {
    std::string s;
    s += std::string(to_string(r.scenario)) + ',' + std::string(to_string(r.backend)) + ',';
    s += std::to_string(r.n) + ',' + std::to_string(r.segments) + ',' + std::to_string(r.steps) + ',';
    s += detail::fmt("%.10g", r.mean_nact) + ',';
    s += std::to_string(r.elements_scanned) + ',' + std::to_string(r.pnodes_scanned) + ',';
    s += std::to_string(r.tnodes_traversed) + ',' + std::to_string(r.comparisons) + ',';
    s += std::to_string(r.sync_events) + ',';
    s += detail::fmt("%.6e", r.select_seconds) + ',' + detail::fmt("%.6e", r.force_seconds) + ',';
    s += detail::fmt("%.6e", r.energy_rel_drift);
    return s;
}

//! `#`-prefixed reproducibility header.
inline void write_config_comments(std::ostream& out, const std::string& command, const RunConfig& c) {
    out << "# command=" << command << '\n'
        << "# scenario=" << to_string(c.effective_scenario()) << '\n'
        << "# n=" << c.n << '\n'
        << "# seed=" << c.seed << '\n'
        << "# t_end=" << detail::fmt("%.17g", c.t_end) << '\n'
        << "# eta=" << detail::fmt("%.17g", c.eta) << '\n'
        << "# eta_s=" << detail::fmt("%.17g", c.eta_s) << '\n'
        << "# eps=" << detail::fmt("%.17g", c.softening) << '\n'
        << "# central=" << detail::fmt("%.17g", c.mratio_central) << '\n'
        << "# binary_a=" << detail::fmt("%.17g", c.binary_a) << '\n'
        << "# backend=" << to_string(c.backend) << '\n'
        << "# segments=" << c.segments << '\n';
    if (!c.in.empty())
        out << "# in=" << c.in << '\n';
}

//! Initial conditions for a config: loaded snapshot or generated Plummer
//! model, with the optional binary placed around particle 0.
inline System make_system(const RunConfig& c) {
    System sys = c.in.empty() ? generate_plummer(c.n, c.seed, c.mratio_central) : load_snapshot(c.in);
    sys.softening = c.softening;
    sys.eta = c.eta;
    sys.eta_s = c.eta_s;
    sys.backend = c.backend;
    if (c.binary_a > 0.0)
        inject_binary(sys, c.binary_a, 0, 1);
    return sys;
}

//! Scheduler-only workload: random block steps on levels 3..12, no physics.
inline BenchRow run_random(const RunConfig& c) {
    std::mt19937_64 rng(c.seed);
    auto level = [&rng] { return 3 + static_cast<int>(rng() % 10); };
    std::vector<Entry> entries(c.n);
    for (std::size_t i = 0; i < c.n; ++i)
        entries[i] = {static_cast<ParticleId>(i), TickTime{0} + DtLevel{level()}};

    AnyScheduler sched(c.backend, entries, c.segments, c.parallel);
    const auto t_end = TickTime::from_units(c.t_end);
    std::vector<Entry> updates;
    double select = 0.0;
    using clock = std::chrono::steady_clock;
    for (TickTime now{0}; now < t_end;) {
        const auto t0 = clock::now();
        auto active = sched.peek_min();
        const auto t1 = clock::now();
        std::sort(active.ids.begin(), active.ids.end());
        now = active.time;
        updates.clear();
        for (auto id : active.ids) {
            int k = level();
            while (!is_commensurate(now, DtLevel{k}))
                ++k;
            updates.push_back({id, now + DtLevel{k}});
        }
        const auto t2 = clock::now();
        sched.commit_updates(updates);
        const auto t3 = clock::now();
        select += std::chrono::duration<double>((t1 - t0) + (t3 - t2)).count();
    }

    const auto k = sched.counters();
    BenchRow r;
    r.scenario = Scenario::Random;
    r.backend = c.backend;
    r.n = c.n;
    r.segments = c.backend == BackendKind::Segmented ? c.segments : 1;
    r.steps = k.steps;
    r.mean_nact = k.mean_nact();
    r.elements_scanned = k.elements_scanned;
    r.pnodes_scanned = k.pnodes_scanned;
    r.tnodes_traversed = k.tnodes_traversed;
    r.comparisons = k.comparisons;
    r.sync_events = k.sync_events;
    r.particles_selected = k.particles_selected;
    r.select_seconds = select;
    return r;
}

//! One full integration for the config.
inline BenchRow run_once(const RunConfig& c) {
    c.validate();
    if (c.effective_scenario() == Scenario::Random)
        return run_random(c);

    auto sys = make_system(c);
    const auto t_end = TickTime::from_units(c.t_end);
    if (t_end <= sys.time)
        throw Error(ErrorCode::BadParameter, "--t-end must exceed the snapshot time");
    const auto report = run(sys, t_end, c.segments);
    const auto& k = report.counters;

    BenchRow r;
    r.scenario = c.effective_scenario();
    r.backend = c.backend;
    r.n = sys.n();
    r.segments = c.backend == BackendKind::Segmented ? c.segments : 1;
    r.steps = k.steps;
    r.mean_nact = k.mean_nact();
    r.elements_scanned = k.elements_scanned;
    r.pnodes_scanned = k.pnodes_scanned;
    r.tnodes_traversed = k.tnodes_traversed;
    r.comparisons = k.comparisons;
    r.sync_events = k.sync_events;
    r.particles_selected = k.particles_selected;
    r.select_seconds = report.diagnostics.walltime_select;
    r.force_seconds = report.diagnostics.walltime_force;
    r.energy_rel_drift = report.energy_rel_drift();
    return r;
}

// ------------------------------------------------------------------ commands

inline void cmd_generate(const RunConfig& c, std::ostream& fallback) {
    c.validate();
    if (!c.in.empty())
        throw Error(ErrorCode::BadParameter, "generate does not take --in");
    const auto sys = make_system(c);
    if (c.out.empty())
        write_snapshot(fallback, sys);
    else
        save_snapshot(c.out, sys);
}

//! Appends one row to c.out (header and config comments when the file is new
//! or empty), or writes a complete table to `fallback`.
inline BenchRow cmd_run(const RunConfig& c, std::ostream& fallback) {
    const auto row = run_once(c);
    if (c.out.empty()) {
        write_config_comments(fallback, "run", c);
        fallback << kCsvHeader << '\n' << csv_line(row) << '\n';
        return row;
    }
    bool fresh;
    {
        std::ifstream probe(c.out, std::ios::binary | std::ios::ate);
        fresh = !probe || probe.tellg() == 0;
    }
    std::ofstream out(c.out, std::ios::binary | std::ios::app);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open " + c.out);
    if (fresh) {
        write_config_comments(out, "run", c);
        out << kCsvHeader << '\n';
    }
    out << csv_line(row) << '\n';
    return row;
}

struct ScalingResult {
    std::vector<BenchRow> rows;
    double exponent = 0.0;
};

//! Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx / m, my = sy / m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

namespace detail {

inline void write_table(std::ostream& out, const std::string& command, const RunConfig& c,
                        const std::vector<BenchRow>& rows, const std::string& extra_comment = {}) {
    write_config_comments(out, command, c);
    if (!extra_comment.empty())
        out << "# " << extra_comment << '\n';
    out << kCsvHeader << '\n';
    for (const auto& r : rows)
        out << csv_line(r) << '\n';
}

template <class F>
void with_output(const RunConfig& c, std::ostream& fallback, F&& write) {
    if (c.out.empty()) {
        write(fallback);
        return;
    }
    std::ofstream out(c.out, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open " + c.out);
    write(out);
}

} // namespace detail

//! Good-case runs over n_list and the fitted N_act exponent.
inline ScalingResult cmd_scaling(const RunConfig& base, const std::vector<std::size_t>& n_list,
                                 std::ostream& fallback) {
    if (n_list.size() < 3)
        throw Error(ErrorCode::BadParameter, "scaling needs at least three values of n");
    if (base.effective_scenario() == Scenario::Random)
        throw Error(ErrorCode::BadParameter, "scaling runs the physical good case");
    ScalingResult res;
    std::vector<double> x, y;
    for (auto n : n_list) {
        auto c = base;
        c.n = n;
        c.out.clear();
        res.rows.push_back(run_once(c));
        x.push_back(static_cast<double>(n));
        y.push_back(res.rows.back().mean_nact);
    }
    res.exponent = loglog_slope(x, y);
    detail::with_output(base, fallback, [&](std::ostream& out) {
        detail::write_table(out, "scaling", base, res.rows);
        out << "# fitted_exponent=" << detail::fmt("%.6f", res.exponent) << '\n';
    });
    return res;
}

//! One row per backend; the segmented backend gets one row per segment count.
inline std::vector<BenchRow> cmd_compare(const RunConfig& base, const std::vector<BackendKind>& backends,
                                         const std::vector<std::size_t>& segments, std::ostream& fallback) {
    if (backends.empty())
        throw Error(ErrorCode::BadParameter, "compare needs at least one backend");
    std::vector<BenchRow> rows;
    for (auto b : backends) {
        auto c = base;
        c.backend = b;
        c.out.clear();
        if (b == BackendKind::Segmented) {
            for (auto p : segments.empty() ? std::vector<std::size_t>{1} : segments) {
                c.segments = p;
                rows.push_back(run_once(c));
            }
        } else {
            c.segments = 1;
            rows.push_back(run_once(c));
        }
    }
    std::string listed = "compared=";
    for (std::size_t i = 0; i < rows.size(); ++i)
        listed += (i ? "," : "") + std::string(to_string(rows[i].backend)) + ":" + std::to_string(rows[i].segments);
    detail::with_output(base, fallback,
                        [&](std::ostream& out) { detail::write_table(out, "compare", base, rows, listed); });
    return rows;
}

} // namespace hits::bench
