// Integrates an equal-mass circular binary for a few periods and prints how
// far particle 1 is from its analytic position, for a range of eta.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "hits/hermite/integrator.hpp"

using namespace hits;

int main() {
    constexpr double period = 1.0;
    constexpr double periods = 4.0;
    const double w = 2.0 * std::numbers::pi / period;
    const double a = std::cbrt(1.0 / (w * w));

    std::printf("%-8s %-6s %-8s %s\n", "eta", "level", "steps", "position error");
    for (double eta : {0.04, 0.01, 0.0025, 6.25e-4}) {
        System s;
        s.softening = 0.0;
        s.eta = eta;
        s.particles.resize(2);
        s.particles[0].mass = s.particles[1].mass = 0.5;
        s.particles[0].pos = {-a / 2, 0, 0};
        s.particles[1].pos = {a / 2, 0, 0};
        s.particles[0].vel = {0, -w * a / 2, 0};
        s.particles[1].vel = {0, w * a / 2, 0};

        const auto report = run(s, TickTime::from_units(periods * period));
        const Vec3 exact{a / 2 * std::cos(w * periods), a / 2 * std::sin(w * periods), 0.0};
        std::printf("%-8g %-6d %-8llu %.3e\n", eta, s.particles[1].dt.level(),
                    static_cast<unsigned long long>(report.diagnostics.steps), norm(s.particles[1].pos - exact));
    }
}
