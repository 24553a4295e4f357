#pragma once

// Two-pass selection over a flat array of active times: one pass finds
// min_t, a second pass collects every particle whose time equals it.

#include <optional>
#include <span>
#include <vector>

#include "hits/scheduler/common.hpp"

namespace hits {

namespace detail {

//! Flat storage shared by the array-scanning backends: particles in build
//! order plus an id-indexed table for validation and slot lookup.
class FlatTimes {
public:
    explicit FlatTimes(std::span<const Entry> entries) { assign(entries); }

    void assign(std::span<const Entry> entries) {
        auto table = time_table(entries);
        std::vector<std::uint32_t> slot_of(table.size(), 0);
        std::vector<Entry> slots(entries.begin(), entries.end());
        for (std::size_t i = 0; i < slots.size(); ++i)
            slot_of[slots[i].id] = static_cast<std::uint32_t>(i);
        table_ = std::move(table);
        slot_of_ = std::move(slot_of);
        slots_ = std::move(slots);
    }

    std::size_t size() const noexcept { return slots_.size(); }
    const Entry& operator[](std::size_t slot) const noexcept { return slots_[slot]; }
    std::span<const ActiveTime> table() const noexcept { return table_; }

    void set(ParticleId id, ActiveTime time) noexcept {
        table_[id] = time;
        slots_[slot_of_[id]].time = time;
    }

private:
    std::vector<ActiveTime> table_;
    std::vector<std::uint32_t> slot_of_;
    std::vector<Entry> slots_;
};

} // namespace detail

class NaiveScan {
public:
    explicit NaiveScan(std::span<const Entry> entries) : data_(entries) {}

    void rebuild(std::span<const Entry> entries) {
        data_.assign(entries);
        cached_.reset();
    }

    std::size_t size() const noexcept { return data_.size(); }

    ActiveSet peek_min() {
        const auto n = data_.size();
        // pass 1: min_t
        ActiveTime min_t = data_[0].time;
        for (std::size_t i = 1; i < n; ++i) {
            if (data_[i].time < min_t)
                min_t = data_[i].time;
        }
        counters_.elements_scanned += n;
        counters_.comparisons += n - 1;

        // pass 2: everyone at min_t
        ActiveSet set{min_t, {}};
        for (std::size_t i = 0; i < n; ++i) {
            if (data_[i].time == min_t)
                set.ids.push_back(data_[i].id);
        }
        counters_.elements_scanned += n;
        counters_.comparisons += n;

        cached_ = set;
        return set;
    }

    void commit_updates(std::span<const Entry> updates) {
        if (!cached_)
            peek_min();
        detail::validate_commit(data_.table(), cached_->time, cached_->ids.size(), updates);
        for (const auto& u : updates)
            data_.set(u.id, u.time);
        cached_.reset();
        ++counters_.steps;
        counters_.particles_selected += updates.size();
    }

    const SchedulerCounters& counters() const noexcept { return counters_; }

private:
    detail::FlatTimes data_;
    std::optional<ActiveSet> cached_;  // result of the last peek in this cycle
    SchedulerCounters counters_;
};

} // namespace hits
