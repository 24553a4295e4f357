#pragma once

#include <vector>

#include "hits/hermite/vec3.hpp"
#include "hits/scheduler.hpp"
#include "hits/timebase.hpp"

namespace hits {

struct Particle {
    double mass = 0.0;
    Vec3 pos, vel;
    Vec3 acc, jerk;       // at time t
    Vec3 snap, crackle;   // reconstructed by the corrector, at time t
    TickTime t;           // time of last correction
    DtLevel dt;
    Vec3 pos_pred, vel_pred;

    ActiveTime active_time() const noexcept { return t + dt; }
};

struct System {
    std::vector<Particle> particles;
    TickTime time;
    double softening = 0.01;
    double eta = 0.01;    // Aarseth accuracy parameter
    double eta_s = 0.01;  // initial-step parameter
    BackendKind backend = BackendKind::Bucket;

    std::size_t n() const noexcept { return particles.size(); }
};

} // namespace hits
