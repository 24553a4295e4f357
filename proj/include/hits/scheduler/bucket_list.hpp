#pragma once

// Two-level time-bucket linked list.
//
// The T-list holds one T-node per distinct active time in ascending order.
// Each T-node owns a singly linked P-list of particle ids sharing that time.
// The head T-node is the only access point: its time is min_t and its P-list
// is the active set, so selection touches exactly N_act P-nodes.
//
// Storage is index based. T-nodes live in a pool with a free list; P-nodes
// are one link slot per particle, since every particle sits in exactly one
// P-list at a time.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hits/scheduler/common.hpp"

namespace hits {

class BucketList {
public:
    struct Bucket {
        ActiveTime time;
        std::vector<ParticleId> ids;  // P-list order, head first
    };

    explicit BucketList(std::span<const Entry> entries) { rebuild(entries); }

    //! Replaces the contents (checkpoint restore). Counters keep accumulating.
    void rebuild(std::span<const Entry> entries) {
        auto times = detail::time_table(entries);
        times_ = std::move(times);
        n_ = entries.size();
        tnodes_.clear();
        free_tnodes_.clear();
        pnext_.assign(times_.size(), kNil);
        head_ = kNil;
        n_tnodes_ = 0;
        // Construction is not part of the per-step cost, so it is not counted.
        for (const auto& e : entries)
            insert(e.id, e.time, nullptr);
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t n_tnodes() const noexcept { return n_tnodes_; }

    ActiveSet peek_min() {
        if (head_ == kNil)
            throw Error(ErrorCode::EmptySystem, "scheduler is empty");
        const auto& head = tnodes_[head_];
        ActiveSet set{head.time, {}};
        set.ids.reserve(head.count);
        for (auto p = head.first; p != kNil; p = pnext_[p])
            set.ids.push_back(p);
        counters_.pnodes_scanned += set.ids.size();
        return set;
    }

    void commit_updates(std::span<const Entry> updates) {
        if (head_ == kNil)
            throw Error(ErrorCode::EmptySystem, "scheduler is empty");
        const auto old_head = head_;
        detail::validate_commit(times_, tnodes_[old_head].time, tnodes_[old_head].count, updates);

        // Every new time exceeds min_t, so reinsertion never lands in the old head.
        for (const auto& u : updates) {
            times_[u.id] = u.time;
            insert(u.id, u.time, &counters_);
        }
        head_ = tnodes_[old_head].next;
        release(old_head);

        ++counters_.steps;
        counters_.particles_selected += updates.size();
    }

    const SchedulerCounters& counters() const noexcept { return counters_; }

    //! Snapshot of the T-list for inspection. Not counted.
    std::vector<Bucket> tlist() const {
        std::vector<Bucket> out;
        for (auto t = head_; t != kNil; t = tnodes_[t].next) {
            Bucket b{tnodes_[t].time, {}};
            for (auto p = tnodes_[t].first; p != kNil; p = pnext_[p])
                b.ids.push_back(p);
            out.push_back(std::move(b));
        }
        return out;
    }

    //! Throws std::logic_error if a structural invariant is broken.
    void verify() const {
        std::size_t particles = 0;
        std::size_t nodes = 0;
        bool first = true;
        ActiveTime prev{};
        for (auto t = head_; t != kNil; t = tnodes_[t].next) {
            const auto& node = tnodes_[t];
            if (!first && !(prev < node.time))
                throw std::logic_error("T-list not strictly ascending");
            if (node.count == 0 || node.first == kNil)
                throw std::logic_error("empty T-node");
            std::size_t len = 0;
            for (auto p = node.first; p != kNil; p = pnext_[p]) {
                if (times_[p] != node.time)
                    throw std::logic_error("particle " + std::to_string(p) + " filed under wrong time");
                ++len;
                if (len > times_.size())
                    throw std::logic_error("cycle in P-list");
            }
            if (len != node.count)
                throw std::logic_error("P-list length disagrees with T-node count");
            particles += len;
            ++nodes;
            prev = node.time;
            first = false;
        }
        if (particles != n_)
            throw std::logic_error("particle count not conserved");
        if (nodes != n_tnodes_)
            throw std::logic_error("T-node count mismatch");
    }

private:
    using Index = std::uint32_t;
    static constexpr Index kNil = std::numeric_limits<Index>::max();

    struct TNode {
        ActiveTime time;
        Index first = kNil;  // head of the P-list
        std::size_t count = 0;
        Index next = kNil;
    };

    Index allocate(ActiveTime time, Index next) {
        Index idx;
        if (!free_tnodes_.empty()) {
            idx = free_tnodes_.back();
            free_tnodes_.pop_back();
            tnodes_[idx] = TNode{time, kNil, 0, next};
        } else {
            idx = static_cast<Index>(tnodes_.size());
            tnodes_.push_back(TNode{time, kNil, 0, next});
        }
        ++n_tnodes_;
        return idx;
    }

    void release(Index idx) {
        free_tnodes_.push_back(idx);
        --n_tnodes_;
    }

    // Walks from the head to the first T-node not earlier than `time`; prepends
    // to its P-list on a match, otherwise splices a new T-node in front of it.
    void insert(ParticleId id, ActiveTime time, SchedulerCounters* c) {
        Index prev = kNil;
        Index cur = head_;
        // During a commit the head holds min_t < time; skip it without a test.
        if (c != nullptr && cur != kNil) {
            prev = cur;
            cur = tnodes_[cur].next;
        }
        while (cur != kNil) {
            if (c) {
                ++c->tnodes_traversed;
                ++c->comparisons;
            }
            if (!(tnodes_[cur].time < time))
                break;
            prev = cur;
            cur = tnodes_[cur].next;
        }

        Index target;
        if (cur != kNil && tnodes_[cur].time == time) {
            target = cur;
        } else {
            target = allocate(time, cur);
            if (prev == kNil)
                head_ = target;
            else
                tnodes_[prev].next = target;
        }
        auto& node = tnodes_[target];
        pnext_[id] = node.first;
        node.first = id;
        ++node.count;
    }

    std::vector<ActiveTime> times_;  // by id; bookkeeping for validation only
    std::size_t n_ = 0;
    std::vector<TNode> tnodes_;
    std::vector<Index> free_tnodes_;
    std::vector<Index> pnext_;  // P-node links, indexed by particle id
    Index head_ = kNil;         // CurrTNode
    std::size_t n_tnodes_ = 0;
    SchedulerCounters counters_;
};

} // namespace hits
