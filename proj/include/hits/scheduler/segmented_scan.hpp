#pragma once

// Segmented selection modelled on the distributed-memory scheme: the array
// is split into P equal segments, each finds its local minimum, one
// all-reduce yields min_t, each segment selects its own matches and a gather
// assembles the full list. The two collectives are counted as sync events.
//
// Segments run sequentially by default. With `parallel` set, each segment is
// handed to its own task; counters come out identical either way.

#include <algorithm>
#include <future>
#include <optional>
#include <span>
#include <vector>

#include "hits/scheduler/naive_scan.hpp"

namespace hits {

class SegmentedScan {
public:
    SegmentedScan(std::span<const Entry> entries, std::size_t segments, bool parallel = false)
        : data_(entries), segments_(segments), parallel_(parallel) {
        if (segments == 0)
            throw Error(ErrorCode::BadParameter, "segment count must be >= 1");
    }

    void rebuild(std::span<const Entry> entries) {
        data_.assign(entries);
        cached_.reset();
    }

    std::size_t size() const noexcept { return data_.size(); }
    std::size_t segments() const noexcept { return segments_; }

    ActiveSet peek_min() {
        const auto p = segments_;
        std::vector<Local> local(p);

        for_each_segment([&](std::size_t s) { local[s] = local_min(s); });
        // all-reduce
        std::optional<ActiveTime> min_t;
        for (const auto& l : local) {
            counters_.elements_scanned += l.scanned;
            counters_.comparisons += l.comparisons;
            if (!l.min)
                continue;
            if (min_t)
                ++counters_.comparisons;
            if (!min_t || *l.min < *min_t)
                min_t = l.min;
        }
        ++counters_.sync_events;

        std::vector<std::vector<ParticleId>> picked(p);
        for_each_segment([&](std::size_t s) { picked[s] = local_select(s, *min_t); });
        // gather
        ActiveSet set{*min_t, {}};
        for (std::size_t s = 0; s < p; ++s) {
            const auto [begin, end] = bounds(s);
            counters_.elements_scanned += end - begin;
            counters_.comparisons += end - begin;
            set.ids.insert(set.ids.end(), picked[s].begin(), picked[s].end());
        }
        ++counters_.sync_events;

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
    struct Local {
        std::optional<ActiveTime> min;
        std::uint64_t scanned = 0;
        std::uint64_t comparisons = 0;
    };

    std::pair<std::size_t, std::size_t> bounds(std::size_t s) const noexcept {
        const auto n = data_.size();
        return {s * n / segments_, (s + 1) * n / segments_};
    }

    Local local_min(std::size_t s) const {
        const auto [begin, end] = bounds(s);
        Local l;
        l.scanned = end - begin;
        if (begin == end)
            return l;
        auto m = data_[begin].time;
        for (auto i = begin + 1; i < end; ++i) {
            if (data_[i].time < m)
                m = data_[i].time;
        }
        l.min = m;
        l.comparisons = end - begin - 1;
        return l;
    }

    std::vector<ParticleId> local_select(std::size_t s, ActiveTime min_t) const {
        const auto [begin, end] = bounds(s);
        std::vector<ParticleId> ids;
        for (auto i = begin; i < end; ++i) {
            if (data_[i].time == min_t)
                ids.push_back(data_[i].id);
        }
        return ids;
    }

    template <class F>
    void for_each_segment(F&& f) const {
        if (!parallel_ || segments_ == 1) {
            for (std::size_t s = 0; s < segments_; ++s)
                f(s);
            return;
        }
        std::vector<std::future<void>> tasks;
        tasks.reserve(segments_);
        for (std::size_t s = 0; s < segments_; ++s)
            tasks.push_back(std::async(std::launch::async, [&f, s] { f(s); }));
        for (auto& t : tasks)
            t.get();
    }

    detail::FlatTimes data_;
    std::size_t segments_;
    bool parallel_;
    std::optional<ActiveSet> cached_;
    SchedulerCounters counters_;
};

} // namespace hits
