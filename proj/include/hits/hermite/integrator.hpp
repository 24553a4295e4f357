#pragma once

// Fourth-order Hermite predictor-corrector on individual block time steps.
//
// One cycle: the scheduler names the particles due at min_t, every particle is
// predicted to min_t, forces on the active ones are evaluated from that
// snapshot, they are corrected, given new steps, and handed back to the
// scheduler with their new active times.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hits/hermite/force.hpp"
#include "hits/hermite/system.hpp"
#include "hits/scheduler.hpp"

namespace hits {

//! Hermite corrector over the particle's own step p.dt. Expects pos_pred and
//! vel_pred at p.t + p.dt and the force derivatives (a1, j1) evaluated there.
inline Particle correct(const Particle& p, const Vec3& a1, const Vec3& j1) {
    const double h = p.dt.units();
    const double h2 = h * h;
    const Vec3 da = p.acc - a1;
    const Vec3 snap0 = (-6.0 * da - h * (4.0 * p.jerk + 2.0 * j1)) * (1.0 / h2);
    const Vec3 crackle = (12.0 * da + 6.0 * h * (p.jerk + j1)) * (1.0 / (h2 * h));

    Particle out = p;
    out.pos = p.pos_pred + (h2 * h2 / 24.0) * snap0 + (h2 * h2 * h / 120.0) * crackle;
    out.vel = p.vel_pred + (h2 * h / 6.0) * snap0 + (h2 * h2 / 24.0) * crackle;
    out.acc = a1;
    out.jerk = j1;
    out.snap = snap0 + h * crackle;
    out.crackle = crackle;
    out.t = p.t + p.dt;
    out.pos_pred = out.pos;
    out.vel_pred = out.vel;
    return out;
}

//! Aarseth step sqrt(eta (|a||s| + |j|^2) / (|j||c| + |s|^2)).
//!
//! Before the corrector has produced s and c (both zero) the lower-order form
//! sqrt(eta) |a| / |j| is used. Any other zero denominator yields dt_max.
inline double aarseth_dt(const Vec3& a, const Vec3& j, const Vec3& s, const Vec3& c, double eta) {
    const double na = norm(a), nj = norm(j), ns = norm(s), nc = norm(c);
    if (ns == 0.0 && nc == 0.0) {
        if (na > 0.0 && nj > 0.0)
            return std::sqrt(eta) * na / nj;
        return kDtMax.units();
    }
    const double den = nj * nc + ns * ns;
    if (den == 0.0)
        return kDtMax.units();
    return std::sqrt(eta * (na * ns + nj * nj) / den);
}

//! Initial step eta_s |a| / |j|, or dt_max when the jerk vanishes.
inline double initial_dt(const Vec3& a, const Vec3& j, double eta_s) {
    const double nj = norm(j);
    if (nj == 0.0)
        return kDtMax.units();
    return eta_s * norm(a) / nj;
}

//! Starts every particle at sys.time: fresh force derivatives and initial steps.
inline void initialize(System& sys) {
    for (auto& p : sys.particles) {
        p.t = sys.time;
        p.pos_pred = p.pos;
        p.vel_pred = p.vel;
    }
    const PredictedField field(sys);
    for (std::size_t i = 0; i < sys.n(); ++i) {
        auto& p = sys.particles[i];
        const auto f = field.acc_jerk(i);
        p.acc = f.acc;
        p.jerk = f.jerk;
        p.snap = {};
        p.crackle = {};
        p.dt = quantize_dt(initial_dt(p.acc, p.jerk, sys.eta_s), sys.time);
    }
}

inline std::vector<Entry> schedule_entries(const System& sys) {
    std::vector<Entry> entries;
    entries.reserve(sys.n());
    for (std::size_t i = 0; i < sys.n(); ++i)
        entries.push_back({static_cast<ParticleId>(i), sys.particles[i].active_time()});
    return entries;
}

struct StepResult {
    ActiveTime time;
    std::vector<ParticleId> corrected;  // ascending
    double select_seconds = 0.0;
    double force_seconds = 0.0;
};

//! One block step. The scheduler must reflect the particles' active times.
template <SchedulerBackend Scheduler>
StepResult step(System& sys, Scheduler& sched) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto active = sched.peek_min();
    const auto t1 = clock::now();

    const auto now = active.time;
    // Process in id order so the trajectory is independent of the backend's
    // P-list or array order.
    std::sort(active.ids.begin(), active.ids.end());

    for (auto& p : sys.particles) {
        const auto pr = predict(p, now);
        p.pos_pred = pr.pos;
        p.vel_pred = pr.vel;
    }
    const PredictedField field(sys);
    std::vector<ForceDerivatives> forces;
    forces.reserve(active.ids.size());
    for (auto id : active.ids)
        forces.push_back(field.acc_jerk(id));

    std::vector<Entry> updates;
    updates.reserve(active.ids.size());
    for (std::size_t k = 0; k < active.ids.size(); ++k) {
        auto& p = sys.particles[active.ids[k]];
        p = correct(p, forces[k].acc, forces[k].jerk);
        const double raw = aarseth_dt(p.acc, p.jerk, p.snap, p.crackle, sys.eta);
        p.dt = quantize_dt(raw, p.t);
        if (p.t.ticks() > kMaxTicks - p.dt.ticks())
            throw Error(ErrorCode::BadParameter, "active time exceeds tick range");
        updates.push_back({active.ids[k], p.active_time()});
    }
    const auto t2 = clock::now();
    sched.commit_updates(updates);
    const auto t3 = clock::now();

    sys.time = now;
    const std::chrono::duration<double> select = (t1 - t0) + (t3 - t2);
    const std::chrono::duration<double> force = t2 - t1;
    return {now, std::move(active.ids), select.count(), force.count()};
}

struct Diagnostics {
    double energy = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t sum_nact = 0;
    double walltime_select = 0.0;
    double walltime_force = 0.0;
};

struct RunReport {
    Diagnostics diagnostics;
    SchedulerCounters counters;
    double energy_initial = 0.0;

    double energy_rel_drift() const noexcept {
        return energy_initial == 0.0 ? 0.0 : (diagnostics.energy - energy_initial) / std::abs(energy_initial);
    }
};

//! Integrates a synchronized system from sys.time to t_end (a multiple of
//! dt_max) with the backend in sys.backend. Forces and steps are freshly
//! initialized, as on a restart.
inline RunReport run(System& sys, TickTime t_end, std::size_t segments = 1) {
    if (sys.n() < 2)
        throw Error(ErrorCode::BadParameter, "integration needs at least two particles");
    if (t_end < sys.time)
        throw Error(ErrorCode::BadParameter, "t_end precedes the system time");
    if (!is_commensurate(t_end, kDtMax))
        throw Error(ErrorCode::BadParameter, "t_end must be a whole multiple of dt_max");
    for (const auto& p : sys.particles) {
        if (p.t != sys.time)
            throw Error(ErrorCode::BadParameter, "run requires every particle at the system time");
    }

    RunReport report;
    const auto e0 = total_energy(sys);
    report.energy_initial = e0.total();
    if (t_end == sys.time) {
        report.diagnostics.energy = e0.total();
        report.diagnostics.kinetic = e0.kinetic;
        report.diagnostics.potential = e0.potential;
        return report;
    }

    initialize(sys);
    AnyScheduler sched(sys.backend, schedule_entries(sys), segments);
    auto& d = report.diagnostics;
    while (sys.time < t_end) {
        const auto r = step(sys, sched);
        ++d.steps;
        d.sum_nact += r.corrected.size();
        d.walltime_select += r.select_seconds;
        d.walltime_force += r.force_seconds;
    }
    const auto e1 = total_energy(sys);
    d.energy = e1.total();
    d.kinetic = e1.kinetic;
    d.potential = e1.potential;
    report.counters = sched.counters();
    return report;
}

} // namespace hits
