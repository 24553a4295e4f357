#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hits/errors.hpp"
#include "hits/hermite/system.hpp"

namespace hits {

struct Prediction {
    Vec3 pos, vel;
};

//! Third-order Taylor predictor from the particle's last corrected state.
inline Prediction predict(const Particle& p, TickTime t) {
    if (t < p.t)
        throw Error(ErrorCode::BadParameter, "cannot predict backwards in time");
    const double d = units_between(p.t, t);
    const double d2 = d * d / 2.0;
    const double d3 = d * d2 / 3.0;
    return {p.pos + d * p.vel + d2 * p.acc + d3 * p.jerk, p.vel + d * p.acc + d2 * p.jerk};
}

struct ForceDerivatives {
    Vec3 acc, jerk;
};

//! Struct-of-arrays copy of the predicted positions and velocities; the force
//! loop streams over it once per active particle.
class PredictedField {
public:
    explicit PredictedField(const System& sys) : eps2_(sys.softening * sys.softening) {
        const auto n = sys.n();
        m_.resize(n);
        x_.resize(n); y_.resize(n); z_.resize(n);
        vx_.resize(n); vy_.resize(n); vz_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = sys.particles[i];
            m_[i] = p.mass;
            x_[i] = p.pos_pred.x; y_[i] = p.pos_pred.y; z_[i] = p.pos_pred.z;
            vx_[i] = p.vel_pred.x; vy_[i] = p.vel_pred.y; vz_[i] = p.vel_pred.z;
        }
    }

    //! Softened Newtonian acceleration on i and its time derivative.
    ForceDerivatives acc_jerk(std::size_t i) const {
        const auto n = m_.size();
        const double xi = x_[i], yi = y_[i], zi = z_[i];
        const double vxi = vx_[i], vyi = vy_[i], vzi = vz_[i];
        double ax = 0, ay = 0, az = 0, jx = 0, jy = 0, jz = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const double dx = x_[j] - xi, dy = y_[j] - yi, dz = z_[j] - zi;
            const double dvx = vx_[j] - vxi, dvy = vy_[j] - vyi, dvz = vz_[j] - vzi;
            const double r2 = dx * dx + dy * dy + dz * dz + eps2_;
            if (r2 == 0.0)
                throw Error(ErrorCode::SingularEncounter,
                            "particles " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
            const double rinv2 = 1.0 / r2;
            const double mrinv3 = m_[j] * rinv2 * std::sqrt(rinv2);
            const double alpha = 3.0 * (dx * dvx + dy * dvy + dz * dvz) * rinv2;
            ax += mrinv3 * dx;
            ay += mrinv3 * dy;
            az += mrinv3 * dz;
            jx += mrinv3 * (dvx - alpha * dx);
            jy += mrinv3 * (dvy - alpha * dy);
            jz += mrinv3 * (dvz - alpha * dz);
        }
        return {{ax, ay, az}, {jx, jy, jz}};
    }

private:
    double eps2_;
    std::vector<double> m_, x_, y_, z_, vx_, vy_, vz_;
};

//! Uses the predicted state (pos_pred, vel_pred) of every particle.
inline ForceDerivatives acc_jerk(std::size_t i, const System& sys) {
    return PredictedField(sys).acc_jerk(i);
}

struct Energy {
    double kinetic = 0.0;
    double potential = 0.0;

    double total() const noexcept { return kinetic + potential; }
};

//! From the corrected (pos, vel); meaningful when all particles share sys.time.
inline Energy total_energy(const System& sys) {
    Energy e;
    const double eps2 = sys.softening * sys.softening;
    const auto& ps = sys.particles;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        e.kinetic += 0.5 * ps[i].mass * dot(ps[i].vel, ps[i].vel);
        double phi = 0.0;
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const auto d = ps[j].pos - ps[i].pos;
            phi += ps[j].mass / std::sqrt(dot(d, d) + eps2);
        }
        e.potential -= ps[i].mass * phi;
    }
    return e;
}

} // namespace hits
