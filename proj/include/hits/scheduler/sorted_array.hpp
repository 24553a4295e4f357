#pragma once

// Sort-based selection: the (time, id) array is kept in ascending order, the
// active set is its leading run of equal times. After a commit the run is
// overwritten in place and the array re-sorted with std::sort; most elements
// are already in place, which shows up in the comparison counter.

#include <algorithm>
#include <span>
#include <vector>

#include "hits/scheduler/common.hpp"

namespace hits {

class SortedArray {
public:
    explicit SortedArray(std::span<const Entry> entries) { rebuild(entries); }

    void rebuild(std::span<const Entry> entries) {
        auto table = detail::time_table(entries);
        std::vector<Entry> order(entries.begin(), entries.end());
        std::sort(order.begin(), order.end(), by_time_then_id);
        table_ = std::move(table);
        order_ = std::move(order);
    }

    std::size_t size() const noexcept { return order_.size(); }

    ActiveSet peek_min() {
        const auto run = leading_run();
        ActiveSet set{order_.front().time, {}};
        set.ids.reserve(run);
        for (std::size_t i = 0; i < run; ++i)
            set.ids.push_back(order_[i].id);
        // the run plus the element that ends it
        const auto reads = run + (run < order_.size() ? 1 : 0);
        counters_.elements_scanned += reads;
        counters_.comparisons += reads - 1;
        return set;
    }

    void commit_updates(std::span<const Entry> updates) {
        const auto run = leading_run();
        detail::validate_commit(table_, order_.front().time, run, updates);
        for (const auto& u : updates)
            table_[u.id] = u.time;
        for (std::size_t i = 0; i < run; ++i)
            order_[i].time = table_[order_[i].id];

        std::uint64_t compared = 0;
        std::sort(order_.begin(), order_.end(), [&compared](const Entry& a, const Entry& b) {
            ++compared;
            return by_time_then_id(a, b);
        });
        counters_.comparisons += compared;
        ++counters_.steps;
        counters_.particles_selected += updates.size();
    }

    const SchedulerCounters& counters() const noexcept { return counters_; }

    std::span<const Entry> order() const noexcept { return order_; }

private:
    static bool by_time_then_id(const Entry& a, const Entry& b) noexcept {
        return a.time != b.time ? a.time < b.time : a.id < b.id;
    }

    std::size_t leading_run() const noexcept {
        std::size_t run = 1;
        while (run < order_.size() && order_[run].time == order_.front().time)
            ++run;
        return run;
    }

    std::vector<ActiveTime> table_;
    std::vector<Entry> order_;
    SchedulerCounters counters_;
};

} // namespace hits
