// Walks a four-particle bucket list through one select/modify cycle and
// prints the T-list before and after, with the counters it cost.

#include <cstdio>

#include "hits/scheduler.hpp"

using namespace hits;

namespace {

void print_tlist(const BucketList& b) {
    for (const auto& node : b.tlist()) {
        std::printf("  t=%-6g {", node.time.units());
        for (std::size_t i = 0; i < node.ids.size(); ++i)
            std::printf(i ? ",%u" : "%u", node.ids[i]);
        std::printf("}\n");
    }
}

} // namespace

int main() {
    auto at = [](double t) { return TickTime::from_units(t); };
    BucketList b(std::vector<Entry>{{1, at(0.25)}, {2, at(0.5)}, {3, at(0.5)}, {4, at(1.0)}});
    std::printf("initial T-list:\n");
    print_tlist(b);

    const auto active = b.peek_min();
    std::printf("active at t=%g:", active.time.units());
    for (auto id : active.ids)
        std::printf(" %u", id);
    std::printf("\n");

    // particle 1 takes a 1/4 step and lands on the existing 1/2 node
    b.commit_updates(std::vector<Entry>{{1, at(0.5)}});
    std::printf("after commit:\n");
    print_tlist(b);

    const auto& k = b.counters();
    std::printf("steps=%llu pnodes_scanned=%llu tnodes_traversed=%llu comparisons=%llu\n",
                static_cast<unsigned long long>(k.steps), static_cast<unsigned long long>(k.pnodes_scanned),
                static_cast<unsigned long long>(k.tnodes_traversed), static_cast<unsigned long long>(k.comparisons));
}
