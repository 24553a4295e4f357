#pragma once

// Plummer sphere in standard N-body units (G = 1, M = 1, E = -1/4).
//
// Radii by inverse transform of the cumulative mass profile, speeds by von
// Neumann rejection on the distribution function, following Aarseth, Henon &
// Wielen (1974). Uniform deviates are built from raw 64-bit engine output so
// a seed gives the same model on every standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "hits/errors.hpp"
#include "hits/hermite/system.hpp"

namespace hits {

namespace detail {

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}

    //! [0, 1) with 53 random bits.
    double operator()() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

private:
    std::mt19937_64 engine_;
};

inline Vec3 isotropic(double radius, Uniform& u) {
    const double z = (1.0 - 2.0 * u()) * radius;
    const double phi = 2.0 * std::numbers::pi * u();
    const double rxy = std::sqrt(std::max(0.0, radius * radius - z * z));
    return {rxy * std::cos(phi), rxy * std::sin(phi), z};
}

} // namespace detail

// Particles beyond this enclosed-mass fraction are redrawn.
inline constexpr double kPlummerMassCutoff = 0.999;

inline System generate_plummer(std::size_t n, std::uint64_t seed, double mratio_central = 0.0) {
    if (n < 2)
        throw Error(ErrorCode::BadParameter, "Plummer model needs n >= 2, got " + std::to_string(n));
    if (!(mratio_central >= 0.0 && mratio_central < 1.0))
        throw Error(ErrorCode::BadParameter, "central mass ratio must lie in [0, 1)");

    const bool central = mratio_central > 0.0;
    const std::size_t first = central ? 1 : 0;
    const double field_mass = (1.0 - mratio_central) / static_cast<double>(n - first);

    System sys;
    sys.particles.resize(n);
    detail::Uniform u(seed);

    const double pos_scale = 3.0 * std::numbers::pi / 16.0;
    const double vel_scale = 1.0 / std::sqrt(pos_scale);

    for (std::size_t i = first; i < n; ++i) {
        double x1;
        do {
            x1 = u();
        } while (x1 <= 0.0 || x1 > kPlummerMassCutoff);
        const double r = 1.0 / std::sqrt(std::pow(x1, -2.0 / 3.0) - 1.0);

        // g(q) = q^2 (1 - q^2)^(7/2) peaks below 0.1
        double q, g;
        do {
            q = u();
            g = 0.1 * u();
        } while (g > q * q * std::pow(1.0 - q * q, 3.5));
        const double v = q * std::numbers::sqrt2 * std::pow(1.0 + r * r, -0.25);

        auto& p = sys.particles[i];
        p.mass = field_mass;
        p.pos = detail::isotropic(r, u) * pos_scale;
        p.vel = detail::isotropic(v, u) * vel_scale;
    }

    // centre of mass of the field at rest at the origin
    Vec3 com, cov;
    double mtot = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        const auto& p = sys.particles[i];
        com += p.mass * p.pos;
        cov += p.mass * p.vel;
        mtot += p.mass;
    }
    com *= 1.0 / mtot;
    cov *= 1.0 / mtot;
    for (std::size_t i = first; i < n; ++i) {
        sys.particles[i].pos -= com;
        sys.particles[i].vel -= cov;
    }

    if (central) {
        auto& c = sys.particles[0];
        c.mass = mratio_central;
        c.pos = {};
        c.vel = {};
    }
    return sys;
}

//! Puts `companion` on a circular orbit of radius a_bin around `primary`,
//! using the softened two-body force so the orbit is circular in the model.
inline void inject_binary(System& sys, double a_bin, std::size_t primary, std::size_t companion) {
    if (!(a_bin > 0.0) || !std::isfinite(a_bin))
        throw Error(ErrorCode::BadParameter, "binary separation must be positive");
    if (primary == companion)
        throw Error(ErrorCode::BadParameter, "binary members must be distinct");
    if (primary >= sys.n() || companion >= sys.n())
        throw Error(ErrorCode::BadParameter, "binary member id out of range");

    const auto& p1 = sys.particles[primary];
    auto& p2 = sys.particles[companion];
    const double eps2 = sys.softening * sys.softening;
    const double m12 = p1.mass + p2.mass;
    const double v_circ = std::sqrt(m12 * a_bin * a_bin / std::pow(a_bin * a_bin + eps2, 1.5));

    p2.pos = p1.pos + Vec3{a_bin, 0.0, 0.0};
    p2.vel = p1.vel + Vec3{0.0, v_circ, 0.0};
}

} // namespace hits
