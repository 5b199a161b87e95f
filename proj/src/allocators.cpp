#include "rr/allocators.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace rr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Item> all_items(int m) {
    std::vector<Item> items(m);
    std::iota(items.begin(), items.end(), 1);
    return items;
}

struct BundleBuilder {
    explicit BundleBuilder(const Instance& inst, bool with_trace)
        : n(inst.n), m(inst.m), trace_on(with_trace) {
        alloc.bundles.assign(n, {});
        if (trace_on) alloc.trace.reserve(m);
    }

    void pick(int turn, Agent agent, Item item) {
        alloc.bundles[agent - 1].push_back(item);
        if (trace_on) alloc.trace.push_back({turn / n + 1, agent, item});
    }

    Allocation finish() {
        for (auto& bundle : alloc.bundles) std::sort(bundle.begin(), bundle.end());
        return std::move(alloc);
    }

    int n, m;
    bool trace_on;
    Allocation alloc;
};

RunReport make_report(std::string algorithm, Allocation alloc, Oracle& oracle,
                      Clock::time_point start) {
    RunReport report;
    report.algorithm = std::move(algorithm);
    report.allocation = std::move(alloc);
    report.transcript = oracle.snapshot_transcript();
    report.seed = oracle.has_noise() ? oracle.config().seed : 0;
    report.elapsed_seconds = seconds_since(start);
    return report;
}

// Per-agent quantile partitions with cursors to the first bucket that may
// still intersect the remaining set: buckets strictly before a cursor are
// fully allocated.
struct AgentCursorState {
    std::vector<QuantilePartition> partitions;  // index agent-1
    std::vector<std::size_t> cursors;
    std::vector<char> remaining;  // index by item id

    AgentCursorState(int n, int m) : cursors(n, 0), remaining(m + 1, 1) {
        partitions.reserve(n);
    }

    // Items of the cursor bucket still unallocated, advancing the cursor past
    // exhausted buckets. Costs no queries, only membership checks.
    void gather_present(Agent agent, std::vector<Item>& present) {
        const auto& buckets = partitions[agent - 1].buckets;
        auto& cursor = cursors[agent - 1];
        present.clear();
        while (true) {
            require(cursor < buckets.size(), ErrorCode::InternalInvariant,
                    "quantile cursor ran past the last bucket");
            for (Item j : buckets[cursor])
                if (remaining[j]) present.push_back(j);
            if (!present.empty()) return;
            ++cursor;
        }
    }
};

// Per-agent sorted prefix lists with lazy deletion: picked items are only
// marked, and heads skip marked entries on the way out; unmarked entries stay
// in strictly decreasing preference.
struct SortedPrefixState {
    std::vector<std::vector<Item>> lists;  // index agent-1, best first
    std::vector<std::size_t> heads;
    std::vector<char> allocated;  // index by item id

    SortedPrefixState(int n, int m) : lists(n), heads(n, 0), allocated(m + 1, 0) {}

    bool exhausted(Agent agent) {
        const auto& list = lists[agent - 1];
        auto& head = heads[agent - 1];
        while (head < list.size() && allocated[list[head]]) ++head;
        return head == list.size();
    }

    Item pop_best(Agent agent) {
        const Item item = lists[agent - 1][heads[agent - 1]++];
        allocated[item] = 1;
        return item;
    }
};

// Replays round-robin from per-agent best-first lists; costs zero queries.
Allocation replay_from_lists(const Instance& inst,
                             const std::vector<std::vector<Item>>& lists,
                             bool with_trace) {
    BundleBuilder out(inst, with_trace);
    std::vector<std::size_t> heads(inst.n, 0);
    std::vector<char> allocated(inst.m + 1, 0);
    for (int turn = 0; turn < inst.m; ++turn) {
        const Agent agent = turn % inst.n + 1;
        auto& head = heads[agent - 1];
        const auto& list = lists[agent - 1];
        while (head < list.size() && allocated[list[head]]) ++head;
        require(head < list.size(), ErrorCode::InternalInvariant,
                "replay ran out of list entries");
        const Item item = list[head++];
        allocated[item] = 1;
        out.pick(turn, agent, item);
    }
    return out.finish();
}

}  // namespace

bool is_known_allocator(const std::string& id) {
    return id == "reference" || id == "worstcase" || id == "random" ||
           id == "fullsort" || id == "repeatedmax" || id == "noisy-comparison" ||
           id == "noisy-value";
}

bool is_noisy_allocator(const std::string& id) {
    return id == "noisy-comparison" || id == "noisy-value";
}

RunReport run_reference(const Instance& inst, bool with_trace) {
    const auto start = Clock::now();
    RunReport report;
    report.algorithm = "reference";
    report.allocation = round_robin_reference(inst, with_trace);
    report.transcript.per_agent.assign(inst.n, {});
    report.elapsed_seconds = seconds_since(start);
    return report;
}

RunReport rr_worstcase(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    const int n = inst.n, m = inst.m;
    const std::vector<Item> items = all_items(m);

    AgentCursorState state(n, m);
    for (Agent a = 1; a <= n; ++a) state.partitions.push_back(quantiles(a, items, n, oracle));

    BundleBuilder out(inst, with_trace);
    std::vector<Item> present;
    present.reserve(n);
    for (int turn = 0; turn < m; ++turn) {
        const Agent agent = turn % n + 1;
        state.gather_present(agent, present);
        auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
        const Item item = detail::scan_best(present, prefers);
        state.remaining[item] = 0;
        out.pick(turn, agent, item);
    }
    return make_report("worstcase", out.finish(), oracle, start);
}

RunReport rr_random(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    const int n = inst.n, m = inst.m;

    // Lean deterministic selection: the median-of-3 introselect keeps the
    // constant in front of the nm term small, which the full median-of-medians
    // pivot would not (see the scaling tests).
    constexpr SelectPivot kPivot = SelectPivot::MedianOfThree;

    BundleBuilder out(inst, with_trace);
    SortedPrefixState state(n, m);
    std::vector<Item> scratch;
    scratch.reserve(m);

    for (int turn = 0; turn < m; ++turn) {
        const Agent agent = turn % n + 1;
        if (state.exhausted(agent)) {
            scratch.clear();
            for (Item j = 1; j <= m; ++j)
                if (!state.allocated[j]) scratch.push_back(j);
            const std::size_t take = (scratch.size() + n - 1) / n;  // ceil(|S|/n)
            auto prefers = [agent, &oracle](Item a, Item b) {
                return oracle.compare(agent, a, b);
            };
            detail::select_split(scratch, 0, scratch.size(), take, prefers, kPivot);
            scratch.resize(take);
            detail::merge_sort(scratch, prefers);
            state.lists[agent - 1] = scratch;
            state.heads[agent - 1] = 0;
        }
        out.pick(turn, agent, state.pop_best(agent));
    }
    return make_report("random", out.finish(), oracle, start);
}

RunReport rr_fullsort_baseline(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    const std::vector<Item> items = all_items(inst.m);
    std::vector<std::vector<Item>> lists;
    lists.reserve(inst.n);
    for (Agent a = 1; a <= inst.n; ++a) lists.push_back(sort_items(a, items, oracle));
    return make_report("fullsort", replay_from_lists(inst, lists, with_trace), oracle, start);
}

RunReport rr_repeatedmax_baseline(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    BundleBuilder out(inst, with_trace);
    std::vector<Item> remaining = all_items(inst.m);
    for (int turn = 0; turn < inst.m; ++turn) {
        const Agent agent = turn % inst.n + 1;
        auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
        const Item item = detail::scan_best(remaining, prefers);
        const auto it = std::find(remaining.begin(), remaining.end(), item);
        *it = remaining.back();
        remaining.pop_back();
        out.pick(turn, agent, item);
    }
    return make_report("repeatedmax", out.finish(), oracle, start);
}

RunReport rr_noisy_comparison(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    const NoiseConfig& cfg = oracle.config();
    validate_noise_config(cfg);
    const double delta0 = cfg.delta / inst.n;  // union bound over the n sorts
    const std::vector<Item> items = all_items(inst.m);
    std::vector<std::vector<Item>> lists;
    lists.reserve(inst.n);
    for (Agent a = 1; a <= inst.n; ++a)
        lists.push_back(noisy_sort(a, items, cfg.rho, delta0, oracle));
    return make_report("noisy-comparison", replay_from_lists(inst, lists, with_trace),
                       oracle, start);
}

RunReport rr_noisy_value(Oracle& oracle, bool with_trace) {
    const auto start = Clock::now();
    const Instance& inst = oracle.instance();
    const NoiseConfig& cfg = oracle.config();
    validate_noise_config(cfg);
    const int n = inst.n, m = inst.m;
    const BoostPlan plan =
        boost_count(cfg.rho, cfg.delta / (static_cast<double>(n) * m));
    std::vector<std::vector<Utility>> declared(n, std::vector<Utility>(m));
    for (Agent a = 1; a <= n; ++a)
        for (Item j = 1; j <= m; ++j)
            declared[a - 1][j - 1] = majority_value(a, j, plan, oracle);
    // Declared tables can contain ties the true instance cannot;
    // round_robin_on_table resolves them toward the smaller item id.
    Allocation alloc = round_robin_on_table(n, m, declared, with_trace);
    return make_report("noisy-value", std::move(alloc), oracle, start);
}

RunReport run_allocator(const std::string& id, const Instance& inst,
                        const NoiseConfig* cfg, bool with_trace) {
    require(is_known_allocator(id), ErrorCode::UnknownAllocator,
            "unknown allocator '" + id + "'");
    validate_instance(inst);
    if (id == "reference") return run_reference(inst, with_trace);
    if (is_noisy_allocator(id)) {
        require(cfg != nullptr, ErrorCode::MissingNoiseConfig,
                "allocator '" + id + "' needs a noise config");
        validate_noise_config(*cfg);
        Oracle oracle(inst, *cfg);
        return id == "noisy-comparison" ? rr_noisy_comparison(oracle, with_trace)
                                        : rr_noisy_value(oracle, with_trace);
    }
    Oracle oracle(inst);
    if (id == "worstcase") return rr_worstcase(oracle, with_trace);
    if (id == "random") return rr_random(oracle, with_trace);
    if (id == "fullsort") return rr_fullsort_baseline(oracle, with_trace);
    return rr_repeatedmax_baseline(oracle, with_trace);
}

RunReport& evaluate_success(const Instance& inst, RunReport& report) {
    const Allocation truth = round_robin_reference(inst, false);
    report.matches_reference = same_bundles(report.allocation, truth);
    return report;
}

}  // namespace rr
