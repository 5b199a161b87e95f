#include "rr/core.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

namespace rr {

bool same_bundles(const Allocation& a, const Allocation& b) {
    return a.bundles == b.bundles;
}

int bundle_quota(int n, int m, Agent agent) {
    return 1 + (m - agent) / n;
}

void validate_instance(const Instance& inst) {
    require(inst.n >= 2, ErrorCode::TooFewAgents,
            "instance needs at least 2 agents, got " + std::to_string(inst.n));
    require(inst.m >= inst.n, ErrorCode::FewerItemsThanAgents,
            "instance needs m >= n, got n=" + std::to_string(inst.n) +
                " m=" + std::to_string(inst.m));
    require(static_cast<int>(inst.utilities.size()) == inst.n,
            ErrorCode::MalformedInstance,
            "utility table must have exactly n rows");
    std::unordered_set<Utility> seen;
    for (int a = 0; a < inst.n; ++a) {
        const auto& row = inst.utilities[a];
        require(static_cast<int>(row.size()) == inst.m,
                ErrorCode::MalformedInstance,
                "utility row " + std::to_string(a + 1) +
                    " must have exactly m entries");
        seen.clear();
        // Cap keeps any bundle sum representable in a 64-bit Utility.
        const Utility cap = std::numeric_limits<Utility>::max() / (inst.m + 1);
        for (Utility u : row) {
            require(u >= 0, ErrorCode::MalformedInstance,
                    "utilities must be nonnegative, agent " +
                        std::to_string(a + 1) + " has " + std::to_string(u));
            require(u <= cap, ErrorCode::MalformedInstance,
                    "utility " + std::to_string(u) + " too large: bundle sums must fit in "
                    "a 64-bit integer (max " + std::to_string(cap) + " for this m)");
            if (!seen.insert(u).second) {
                fail(ErrorCode::DuplicateUtility,
                     "agent " + std::to_string(a + 1) +
                         " has duplicate utility " + std::to_string(u));
            }
        }
    }
}

Allocation round_robin_on_table(int n, int m,
                                const std::vector<std::vector<Utility>>& table,
                                bool with_trace) {
    Allocation alloc;
    alloc.bundles.assign(n, {});
    if (with_trace) alloc.trace.reserve(m);

    std::vector<char> remaining(m + 1, 1);
    for (int turn = 0; turn < m; ++turn) {
        const int round = turn / n + 1;
        const Agent agent = turn % n + 1;
        const auto& row = table[agent - 1];
        Item best = 0;
        for (Item j = 1; j <= m; ++j) {
            if (!remaining[j]) continue;
            if (best == 0 || row[j - 1] > row[best - 1]) best = j;
        }
        remaining[best] = 0;
        alloc.bundles[agent - 1].push_back(best);
        if (with_trace) alloc.trace.push_back({round, agent, best});
    }
    for (auto& bundle : alloc.bundles) std::sort(bundle.begin(), bundle.end());
    return alloc;
}

Allocation round_robin_reference(const Instance& inst, bool with_trace) {
    return round_robin_on_table(inst.n, inst.m, inst.utilities, with_trace);
}

void check_allocation_shape(const Instance& inst, const Allocation& alloc) {
    require(static_cast<int>(alloc.bundles.size()) == inst.n,
            ErrorCode::MalformedAllocation,
            "allocation must have exactly n bundles");
    std::vector<char> seen(inst.m + 1, 0);
    int total = 0;
    for (const auto& bundle : alloc.bundles) {
        for (Item j : bundle) {
            require(j >= 1 && j <= inst.m, ErrorCode::MalformedAllocation,
                    "allocated item " + std::to_string(j) + " out of range");
            require(!seen[j], ErrorCode::MalformedAllocation,
                    "item " + std::to_string(j) + " allocated twice");
            seen[j] = 1;
            ++total;
        }
    }
    require(total == inst.m, ErrorCode::MalformedAllocation,
            "allocation must cover all m items");
}

bool trace_replays(const Instance& inst, const Allocation& alloc) {
    if (static_cast<int>(alloc.trace.size()) != inst.m) return false;
    std::vector<std::vector<Item>> rebuilt(inst.n);
    std::vector<char> remaining(inst.m + 1, 1);
    for (int turn = 0; turn < inst.m; ++turn) {
        const PickEvent& ev = alloc.trace[turn];
        if (ev.round != turn / inst.n + 1) return false;
        if (ev.agent != turn % inst.n + 1) return false;
        if (ev.item < 1 || ev.item > inst.m || !remaining[ev.item]) return false;
        remaining[ev.item] = 0;
        rebuilt[ev.agent - 1].push_back(ev.item);
    }
    for (auto& bundle : rebuilt) std::sort(bundle.begin(), bundle.end());
    return rebuilt == alloc.bundles;
}

}  // namespace rr
