#pragma once

// Text snapshot, one particle per line:
//
//   # n=<N> time=<t> eps=<eps>
//   id mass x y z vx vy vz
//
// Reals are written with 17 significant digits so they round-trip exactly.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hits/errors.hpp"
#include "hits/hermite/system.hpp"

namespace hits {

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline void write_snapshot(std::ostream& out, const System& sys) {
    out << "# n=" << sys.n() << " time=" << detail::fmt17(sys.time.units())
        << " eps=" << detail::fmt17(sys.softening) << '\n';
    for (std::size_t i = 0; i < sys.n(); ++i) {
        const auto& p = sys.particles[i];
        out << i << ' ' << detail::fmt17(p.mass);
        for (double v : {p.pos.x, p.pos.y, p.pos.z, p.vel.x, p.vel.y, p.vel.z})
            out << ' ' << detail::fmt17(v);
        out << '\n';
    }
}

inline System read_snapshot(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw Error(ErrorCode::Io, "empty snapshot");
    std::size_t n = 0;
    double time = 0.0, eps = 0.0;
    if (std::sscanf(header.c_str(), "# n=%zu time=%lf eps=%lf", &n, &time, &eps) != 3)
        throw Error(ErrorCode::Io, "malformed snapshot header: " + header);

    System sys;
    sys.time = TickTime::from_units(time);
    sys.softening = eps;
    sys.particles.resize(n);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::size_t id;
        Particle p;
        if (!(ls >> id >> p.mass >> p.pos.x >> p.pos.y >> p.pos.z >> p.vel.x >> p.vel.y >> p.vel.z))
            throw Error(ErrorCode::Io, "malformed snapshot line: " + line);
        if (id >= n || seen[id])
            throw Error(ErrorCode::Io, "bad or repeated particle id " + std::to_string(id));
        if (!(p.mass >= 0.0))
            throw Error(ErrorCode::BadParameter, "negative mass for particle " + std::to_string(id));
        seen[id] = true;
        p.t = sys.time;
        sys.particles[id] = p;
        ++rows;
    }
    if (rows != n)
        throw Error(ErrorCode::Io, "snapshot header promises " + std::to_string(n) + " particles, found " +
                                       std::to_string(rows));
    return sys;
}

inline void save_snapshot(const std::string& path, const System& sys) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    write_snapshot(out, sys);
    if (!out)
        throw Error(ErrorCode::Io, "write to " + path + " failed");
}

inline System load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    return read_snapshot(in);
}

} // namespace hits
