#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rr/allocators.hpp"

namespace rr {

// True iff the allocation is envy-free up to one item under additive
// utilities: every envy disappears after removing the envied bundle's best
// item (from the envier's point of view). Throws MalformedAllocation on a
// non-partition.
bool check_ef1(const Instance& inst, const Allocation& alloc);

// Per-agent sets of items neither taken before agent i in round 1 nor ever
// taken by agent i, computed from the reference trace. Their total is at
// least nm/4 on every instance; `bound` is that threshold as ceil(nm/4).
struct UnpickedSets {
    std::vector<std::vector<Item>> per_agent;
    long long total = 0;
    long long bound = 0;
};
UnpickedSets unpicked_sets(const Instance& inst);

// Every agent's row is an independent uniformly random permutation of [m].
Instance gen_uniform(int n, int m, std::uint64_t seed);

// Two agents sharing one uniformly random ranking.
Instance gen_identical(int m, std::uint64_t seed);

// Two agents sharing the supplied ranking (items listed best first).
Instance gen_identical_from(const std::vector<Item>& order);

// Two agents, identical preferences: the default order 1 > 2 > ... > m with
// pair (2k-1, 2k) reversed wherever bits[k-1] is set. Item values are
// m, m-1, ..., 1 down the preference order, so pair k carries the value pair
// {m-2k+2, m-2k+1}.
struct PairReversalSpec {
    std::vector<std::uint8_t> bits;  // one per item pair
};
Instance gen_pair_reversal(const PairReversalSpec& spec);

struct SuccessEstimate {
    long long trials = 0;
    long long successes = 0;
    double rate = 0.0;
    double ci_halfwidth = 0.0;  // 3 * sqrt(rate * (1 - rate) / trials)
};

using InstanceMaker = std::function<Instance(std::uint64_t seed)>;
// Called once per trial, in trial order.
using TrialSink =
    std::function<void(long long trial, const RunReport& report, bool success)>;

// Runs `allocator_id` `trials` times, each on a fresh derived noise seed (and,
// in generator mode, a fresh derived instance), comparing bundles against the
// reference allocation of the same instance. Deterministic in cfg.seed.
SuccessEstimate mc_success_rate(const std::string& allocator_id,
                                const InstanceMaker& make_instance,
                                const NoiseConfig& cfg, long long trials,
                                const TrialSink& sink = nullptr);
SuccessEstimate mc_success_rate(const std::string& allocator_id, const Instance& inst,
                                const NoiseConfig& cfg, long long trials,
                                const TrialSink& sink = nullptr);

struct SweepPoint {
    int n = 0;
    int m = 0;
};

struct SweepRow {
    std::string allocator;
    int n = 0, m = 0;
    double rho = 0.0, delta = 0.0;
    long long trials = 0;
    double mean_comparisons = 0.0, mean_values = 0.0;
    std::uint64_t min_comparisons = 0, max_comparisons = 0;
    std::uint64_t min_values = 0, max_values = 0;
    // Mean total queries normalized by the candidate scaling laws.
    double norm_nmlog_m_over_n = 0.0;  // / (nm log2(max(2, m/n)))
    double norm_nm_plus_mlogm = 0.0;   // / (nm + m log2 m)
    double norm_nmlogm = 0.0;          // / (nm log2 m)
    double norm_m2 = 0.0;              // / (m (m-1) / 2)
    double success_rate = 0.0;
};

// Measures mean/min/max query counts over `repetitions` gen_uniform instances
// per grid point. Grid points run in parallel; output order is grid order and
// every count is deterministic in `seed`.
std::vector<SweepRow> scaling_sweep(const std::string& allocator_id,
                                    const std::vector<SweepPoint>& grid,
                                    int repetitions, std::uint64_t seed,
                                    const NoiseConfig* cfg = nullptr);

}  // namespace rr
