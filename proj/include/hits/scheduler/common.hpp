#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hits/errors.hpp"
#include "hits/timebase.hpp"

namespace hits {

using ParticleId = std::uint32_t;

struct Entry {
    ParticleId id;
    ActiveTime time;
};

//! Particles due at the current minimum active time.
struct ActiveSet {
    ActiveTime time;
    std::vector<ParticleId> ids;  // order unspecified

    //! Order-insensitive comparison.
    bool same_as(const ActiveSet& other) const {
        if (time != other.time || ids.size() != other.ids.size())
            return false;
        auto a = ids;
        auto b = other.ids;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
};

struct SchedulerCounters {
    std::uint64_t steps = 0;               // completed peek/commit cycles
    std::uint64_t comparisons = 0;         // ordering tests between active times
    std::uint64_t pnodes_scanned = 0;      // P-node reads (bucket list)
    std::uint64_t tnodes_traversed = 0;    // T-node hops during insertion
    std::uint64_t elements_scanned = 0;    // array reads (scan and sort backends)
    std::uint64_t sync_events = 0;         // reductions and gathers (segmented)
    std::uint64_t particles_selected = 0;  // running sum of N_act

    double mean_nact() const noexcept {
        return steps == 0 ? 0.0 : static_cast<double>(particles_selected) / static_cast<double>(steps);
    }

    bool operator==(const SchedulerCounters&) const = default;
};

namespace detail {

inline constexpr ActiveTime kAbsent{};

//! Validates build input and returns the time table indexed by particle id.
//! Ids must be unique. Gaps are allowed (e.g. numbering from 1); their slots
//! hold kAbsent.
inline std::vector<ActiveTime> time_table(std::span<const Entry> entries) {
    if (entries.empty())
        throw Error(ErrorCode::EmptySystem, "scheduler needs at least one particle");
    const auto n = entries.size();
    ParticleId max_id = 0;
    for (const auto& e : entries)
        max_id = std::max(max_id, e.id);
    if (max_id >= 4 * n + 64)
        throw Error(ErrorCode::BadParameter, "particle ids too sparse: max id " + std::to_string(max_id) +
                                                 " for " + std::to_string(n) + " particles");
    std::vector<ActiveTime> times(std::size_t{max_id} + 1, kAbsent);
    for (const auto& e : entries) {
        if (e.time == kAbsent)
            throw Error(ErrorCode::BadParameter, "active times must be positive");
        if (times[e.id] != kAbsent)
            throw Error(ErrorCode::DuplicateId, "particle id " + std::to_string(e.id) + " appears twice");
        times[e.id] = e.time;
    }
    return times;
}

//! Checks an update batch against the current active set without touching any state.
//! The active set is exactly the ids whose table entry equals min_t, and it has n_active members.
inline void validate_commit(std::span<const ActiveTime> times, ActiveTime min_t, std::size_t n_active,
                            std::span<const Entry> updates) {
    std::vector<ParticleId> ids;
    ids.reserve(updates.size());
    for (const auto& u : updates) {
        if (u.id >= times.size() || times[u.id] != min_t)
            throw Error(ErrorCode::NotActive, "particle " + std::to_string(u.id) + " is not active");
        if (u.time <= min_t)
            throw Error(ErrorCode::NonMonotonicTime,
                        "new active time of particle " + std::to_string(u.id) + " does not exceed min_t");
        ids.push_back(u.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw Error(ErrorCode::DuplicateId, "particle updated twice in one commit");
    if (ids.size() != n_active)
        throw Error(ErrorCode::IncompleteCommit, std::to_string(n_active - ids.size()) +
                                                     " active particle(s) missing from commit");
}

} // namespace detail
} // namespace hits
