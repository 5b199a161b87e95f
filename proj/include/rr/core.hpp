#pragma once

#include <cstdint>
#include <vector>

#include "rr/error.hpp"

namespace rr {

// Agents and items are 1-based everywhere in the public API and in all file
// formats; only the utility table is stored 0-based.
using Agent = int;
using Item = int;

// Utilities are exact integers. Floating point is rejected at the I/O layer:
// strict preferences need unambiguous "distinct" and "maximum".
using Utility = long long;

struct Instance {
    int n = 0;  // agents, >= 2
    int m = 0;  // items, >= n
    std::vector<std::vector<Utility>> utilities;  // utilities[a-1][j-1]

    Utility value(Agent agent, Item item) const {
        return utilities[agent - 1][item - 1];
    }

    bool operator==(const Instance&) const = default;
};

struct PickEvent {
    int round = 0;  // 1-based round
    Agent agent = 0;
    Item item = 0;

    bool operator==(const PickEvent&) const = default;
};

struct Allocation {
    std::vector<std::vector<Item>> bundles;  // bundles[a-1], items ascending
    std::vector<PickEvent> trace;            // empty when trace emission is off

    bool has_trace() const { return !trace.empty(); }
};

// Bundle equality is the success notion for every allocator: traces are
// auxiliary and never compared.
bool same_bundles(const Allocation& a, const Allocation& b);

// Exact number of items agent i receives: 1 + floor((m - i) / n).
int bundle_quota(int n, int m, Agent agent);

// Throws Error unless all Instance invariants hold:
// n >= 2, m >= n, rectangular table, nonnegative values, rows distinct.
void validate_instance(const Instance& inst);

// Ground-truth round-robin semantics, computed directly from the utility
// table: turns run 1..n cyclically and the picker takes her maximum-utility
// remaining item. Every other allocator is checked against this.
Allocation round_robin_reference(const Instance& inst, bool with_trace = true);

// Round-robin over an arbitrary declared utility table (same shape as the
// instance). Ties, which cannot occur in a valid Instance but can in declared
// tables reconstructed from noisy value queries, go to the smaller item id.
Allocation round_robin_on_table(int n, int m,
                                const std::vector<std::vector<Utility>>& table,
                                bool with_trace);

// Throws MalformedAllocation unless `alloc` has n bundles that partition [m].
void check_allocation_shape(const Instance& inst, const Allocation& alloc);

// True iff the trace respects the cyclic order 1..n, picks each item exactly
// once, and replaying it reproduces the bundles.
bool trace_replays(const Instance& inst, const Allocation& alloc);

}  // namespace rr
