#pragma once

// Active-particle selection backends behind one contract:
//
//   peek_min()          -> ActiveSet  (min_t and every id due at it)
//   commit_updates(upd) -> void       (new active times for exactly that set)
//   counters()          -> SchedulerCounters
//   rebuild(entries)                   (checkpoint restore)
//
// AnyScheduler picks a backend at run time.

#include <array>
#include <concepts>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "hits/scheduler/bucket_list.hpp"
#include "hits/scheduler/common.hpp"
#include "hits/scheduler/naive_scan.hpp"
#include "hits/scheduler/segmented_scan.hpp"
#include "hits/scheduler/sorted_array.hpp"

namespace hits {

template <class S>
concept SchedulerBackend = requires(S s, const S cs, std::span<const Entry> entries) {
    { s.peek_min() } -> std::same_as<ActiveSet>;
    { s.commit_updates(entries) };
    { s.rebuild(entries) };
    { cs.counters() } -> std::convertible_to<SchedulerCounters>;
    { cs.size() } -> std::convertible_to<std::size_t>;
};

static_assert(SchedulerBackend<NaiveScan>);
static_assert(SchedulerBackend<SegmentedScan>);
static_assert(SchedulerBackend<SortedArray>);
static_assert(SchedulerBackend<BucketList>);

enum class BackendKind { Naive, Segmented, Sorted, Bucket };

inline constexpr std::array kAllBackends{BackendKind::Naive, BackendKind::Segmented, BackendKind::Sorted,
                                         BackendKind::Bucket};

constexpr std::string_view to_string(BackendKind kind) noexcept {
    switch (kind) {
    case BackendKind::Naive: return "naive";
    case BackendKind::Segmented: return "segmented";
    case BackendKind::Sorted: return "sorted";
    case BackendKind::Bucket: return "bucket";
    }
    return "?";
}

inline BackendKind parse_backend(std::string_view name) {
    for (auto k : kAllBackends) {
        if (to_string(k) == name)
            return k;
    }
    throw Error(ErrorCode::BadParameter, "unknown backend '" + std::string(name) + "'");
}

class AnyScheduler {
public:
    //! `segments` only affects the segmented backend.
    AnyScheduler(BackendKind kind, std::span<const Entry> entries, std::size_t segments = 1,
                 bool parallel = false)
        : impl_(make(kind, entries, segments, parallel)) {}

    BackendKind kind() const noexcept { return static_cast<BackendKind>(impl_.index()); }

    ActiveSet peek_min() {
        return std::visit([](auto& s) { return s.peek_min(); }, impl_);
    }
    void commit_updates(std::span<const Entry> updates) {
        std::visit([&](auto& s) { s.commit_updates(updates); }, impl_);
    }
    void rebuild(std::span<const Entry> entries) {
        std::visit([&](auto& s) { s.rebuild(entries); }, impl_);
    }
    SchedulerCounters counters() const {
        return std::visit([](const auto& s) { return SchedulerCounters{s.counters()}; }, impl_);
    }
    std::size_t size() const {
        return std::visit([](const auto& s) { return s.size(); }, impl_);
    }

    //! Null unless the backend is the bucket list.
    const BucketList* bucket_list() const noexcept { return std::get_if<BucketList>(&impl_); }

private:
    // alternative order matches BackendKind
    using Impl = std::variant<NaiveScan, SegmentedScan, SortedArray, BucketList>;

    static Impl make(BackendKind kind, std::span<const Entry> entries, std::size_t segments, bool parallel) {
        switch (kind) {
        case BackendKind::Naive: return Impl{std::in_place_type<NaiveScan>, entries};
        case BackendKind::Segmented: return Impl{std::in_place_type<SegmentedScan>, entries, segments, parallel};
        case BackendKind::Sorted: return Impl{std::in_place_type<SortedArray>, entries};
        case BackendKind::Bucket: return Impl{std::in_place_type<BucketList>, entries};
        }
        throw Error(ErrorCode::BadParameter, "unknown backend");
    }

    Impl impl_;
};

static_assert(SchedulerBackend<AnyScheduler>);

} // namespace hits
