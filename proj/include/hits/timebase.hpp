#pragma once

// Block time arithmetic on an integer tick grid.
//
// One N-body time unit is 2^52 ticks and every step is a power of two
// between 2^-3 and 2^-52 time units, so "same active time" is an integer
// equality and never a floating-point comparison.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "hits/errors.hpp"

namespace hits {

inline constexpr int kTickBits = 52;
inline constexpr std::uint64_t kTicksPerUnit = std::uint64_t{1} << kTickBits;
inline constexpr std::uint64_t kMaxTicks = std::uint64_t{1} << 63;

class TickTime {
public:
    constexpr TickTime() noexcept = default;
    constexpr explicit TickTime(std::uint64_t ticks) noexcept : ticks_(ticks) {}

    //! Exact conversion from time units; rejects values off the tick grid.
    static TickTime from_units(double units) {
        if (!(units >= 0.0) || !std::isfinite(units))
            throw Error(ErrorCode::BadParameter, "time must be finite and non-negative");
        const double scaled = std::ldexp(units, kTickBits);
        if (scaled > static_cast<double>(kMaxTicks))
            throw Error(ErrorCode::BadParameter, "time exceeds tick range");
        if (scaled != std::floor(scaled))
            throw Error(ErrorCode::BadParameter, "time " + std::to_string(units) + " is not on the tick grid");
        return TickTime{static_cast<std::uint64_t>(scaled)};
    }

    constexpr std::uint64_t ticks() const noexcept { return ticks_; }

    //! Exact for ticks < 2^53.
    double units() const noexcept { return std::ldexp(static_cast<double>(ticks_), -kTickBits); }

    constexpr auto operator<=>(const TickTime&) const noexcept = default;

private:
    std::uint64_t ticks_ = 0;
};

// t_i + dt_i of a particle: the moment it next needs a correction.
using ActiveTime = TickTime;

inline double ticks_to_units(TickTime t) noexcept { return t.units(); }

class DtLevel {
public:
    static constexpr int kMin = 3;   // dt_max = 1/8
    static constexpr int kMax = 52;  // dt_min = 2^-52

    constexpr DtLevel() noexcept = default;
    constexpr explicit DtLevel(int level) : level_(level) {
        if (level < kMin || level > kMax)
            throw Error(ErrorCode::BadParameter, "step level out of range [3, 52]");
    }

    constexpr int level() const noexcept { return level_; }
    constexpr std::uint64_t ticks() const noexcept { return std::uint64_t{1} << (kTickBits - level_); }
    double units() const noexcept { return std::ldexp(1.0, -level_); }

    constexpr auto operator<=>(const DtLevel&) const noexcept = default;

private:
    int level_ = kMin;
};

inline constexpr DtLevel kDtMax{DtLevel::kMin};

constexpr bool is_commensurate(TickTime t, DtLevel dt) noexcept {
    return t.ticks() % dt.ticks() == 0;
}

constexpr TickTime operator+(TickTime t, DtLevel dt) noexcept {
    return TickTime{t.ticks() + dt.ticks()};
}

//! Time-unit distance b - a; exact while the difference is below 2^53 ticks.
inline double units_between(TickTime a, TickTime b) noexcept {
    const auto diff = b.ticks() >= a.ticks() ? static_cast<double>(b.ticks() - a.ticks())
                                             : -static_cast<double>(a.ticks() - b.ticks());
    return std::ldexp(diff, -kTickBits);
}

//! Largest power-of-two step 2^-k <= dt_raw with k >= 3 that divides t.
inline DtLevel quantize_dt(double dt_raw, TickTime t) {
    if (std::isnan(dt_raw) || !(dt_raw > 0.0))
        throw Error(ErrorCode::BadParameter, "raw step must be positive");

    int level = DtLevel::kMin;
    if (std::isfinite(dt_raw) && dt_raw < kDtMax.units()) {
        // 2^e <= dt_raw < 2^(e+1)
        level = -std::ilogb(dt_raw);
    }
    while (level <= DtLevel::kMax &&
           t.ticks() % (std::uint64_t{1} << (kTickBits - level)) != 0)
        ++level;
    if (level > DtLevel::kMax)
        throw Error(ErrorCode::TimestepUnderflow,
                    "no commensurate step >= 2^-52 fits dt=" + std::to_string(dt_raw));
    return DtLevel{level};
}

} // namespace hits
