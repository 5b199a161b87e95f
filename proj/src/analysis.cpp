#include "rr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "rr/rng.hpp"

namespace rr {

namespace {

// Runs fn(0..count-1) across a few worker threads, dynamically scheduled.
// Each index must be independent; results keyed by index stay deterministic.
void parallel_for_indexed(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<Utility> random_permutation_row(int m, Xoshiro256pp& rng) {
    std::vector<Utility> row(m);
    std::iota(row.begin(), row.end(), 1);
    for (int i = m - 1; i > 0; --i) {
        const auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(row[i], row[j]);
    }
    return row;
}

}  // namespace

bool check_ef1(const Instance& inst, const Allocation& alloc) {
    check_allocation_shape(inst, alloc);
    for (Agent i = 1; i <= inst.n; ++i) {
        const auto& row = inst.utilities[i - 1];
        Utility own = 0;
        for (Item g : alloc.bundles[i - 1]) own += row[g - 1];
        for (int other = 0; other < inst.n; ++other) {
            if (other == i - 1) continue;
            Utility theirs = 0;
            Utility best_single = 0;
            for (Item g : alloc.bundles[other]) {
                theirs += row[g - 1];
                best_single = std::max(best_single, row[g - 1]);
            }
            if (own < theirs - best_single) return false;
        }
    }
    return true;
}

UnpickedSets unpicked_sets(const Instance& inst) {
    validate_instance(inst);
    const Allocation ref = round_robin_reference(inst, true);
    UnpickedSets result;
    result.per_agent.assign(inst.n, {});
    // trace[0..n-1] is round 1 in agent order.
    std::vector<char> own(inst.m + 1);
    for (Agent i = 1; i <= inst.n; ++i) {
        std::fill(own.begin(), own.end(), 0);
        for (Item j : ref.bundles[i - 1]) own[j] = 1;
        for (int before = 0; before + 1 < i; ++before) own[ref.trace[before].item] = 1;
        auto& unpicked = result.per_agent[i - 1];
        for (Item j = 1; j <= inst.m; ++j)
            if (!own[j]) unpicked.push_back(j);
        const long long quota = bundle_quota(inst.n, inst.m, i);
        require(static_cast<long long>(unpicked.size()) >= inst.m - (i - 1) - quota,
                ErrorCode::InternalInvariant, "per-agent unpicked-set bound violated");
        result.total += static_cast<long long>(unpicked.size());
    }
    result.bound = (static_cast<long long>(inst.n) * inst.m + 3) / 4;  // ceil(nm/4)
    require(result.total >= result.bound, ErrorCode::InternalInvariant,
            "total unpicked-set bound violated");
    return result;
}

Instance gen_uniform(int n, int m, std::uint64_t seed) {
    require(n >= 2, ErrorCode::TooFewAgents, "generator needs n >= 2");
    require(m >= n, ErrorCode::FewerItemsThanAgents, "generator needs m >= n");
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.utilities.reserve(n);
    Xoshiro256pp rng(derive_seed(seed, 0));
    for (int a = 0; a < n; ++a) inst.utilities.push_back(random_permutation_row(m, rng));
    return inst;
}

Instance gen_identical(int m, std::uint64_t seed) {
    require(m >= 2, ErrorCode::FewerItemsThanAgents, "generator needs m >= 2");
    Instance inst;
    inst.n = 2;
    inst.m = m;
    Xoshiro256pp rng(derive_seed(seed, 0));
    inst.utilities.push_back(random_permutation_row(m, rng));
    inst.utilities.push_back(inst.utilities.front());
    return inst;
}

Instance gen_identical_from(const std::vector<Item>& order) {
    const int m = static_cast<int>(order.size());
    require(m >= 2, ErrorCode::BadParameter, "preference order needs at least 2 items");
    std::vector<Utility> row(m, 0);
    for (int pos = 0; pos < m; ++pos) {
        const Item j = order[pos];
        require(j >= 1 && j <= m, ErrorCode::BadParameter,
                "preference order entries must lie in [1, m]");
        require(row[j - 1] == 0, ErrorCode::BadParameter,
                "preference order repeats item " + std::to_string(j));
        row[j - 1] = m - pos;
    }
    Instance inst;
    inst.n = 2;
    inst.m = m;
    inst.utilities = {row, row};
    return inst;
}

Instance gen_pair_reversal(const PairReversalSpec& spec) {
    require(!spec.bits.empty(), ErrorCode::BadParameter,
            "pair-reversal spec needs at least one pair");
    const int m = 2 * static_cast<int>(spec.bits.size());
    std::vector<Utility> row(m);
    for (int k = 1; k <= m / 2; ++k) {
        Utility high = m - 2 * k + 2;
        Utility low = m - 2 * k + 1;
        if (spec.bits[k - 1]) std::swap(high, low);
        row[2 * k - 2] = high;
        row[2 * k - 1] = low;
    }
    Instance inst;
    inst.n = 2;
    inst.m = m;
    inst.utilities = {row, row};
    return inst;
}

namespace {

SuccessEstimate mc_impl(const std::string& allocator_id, const InstanceMaker& make_instance,
                        const NoiseConfig& cfg, long long trials, const TrialSink& sink) {
    require(is_known_allocator(allocator_id), ErrorCode::UnknownAllocator,
            "unknown allocator '" + allocator_id + "'");
    require(trials >= 100, ErrorCode::BadParameter,
            "Monte Carlo estimates need at least 100 trials");
    validate_noise_config(cfg);

    const auto run_trial = [&](long long t, RunReport* keep) -> bool {
        const std::uint64_t noise_seed = derive_seed(cfg.seed, 2 * static_cast<std::uint64_t>(t));
        const std::uint64_t inst_seed = derive_seed(cfg.seed, 2 * static_cast<std::uint64_t>(t) + 1);
        const Instance inst = make_instance(inst_seed);
        NoiseConfig trial_cfg = cfg;
        trial_cfg.seed = noise_seed;
        RunReport report = run_allocator(allocator_id, inst, &trial_cfg, false);
        const bool ok = same_bundles(report.allocation, round_robin_reference(inst, false));
        if (keep) *keep = std::move(report);
        return ok;
    };

    std::vector<char> outcomes(static_cast<std::size_t>(trials), 0);
    if (sink) {
        for (long long t = 0; t < trials; ++t) {
            RunReport report;
            outcomes[static_cast<std::size_t>(t)] = run_trial(t, &report) ? 1 : 0;
            sink(t, report, outcomes[static_cast<std::size_t>(t)] != 0);
        }
    } else {
        parallel_for_indexed(static_cast<std::size_t>(trials), [&](std::size_t t) {
            outcomes[t] = run_trial(static_cast<long long>(t), nullptr) ? 1 : 0;
        });
    }

    SuccessEstimate est;
    est.trials = trials;
    for (char c : outcomes) est.successes += c;
    est.rate = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.ci_halfwidth = 3.0 * std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(trials));
    return est;
}

}  // namespace

SuccessEstimate mc_success_rate(const std::string& allocator_id,
                                const InstanceMaker& make_instance, const NoiseConfig& cfg,
                                long long trials, const TrialSink& sink) {
    return mc_impl(allocator_id, make_instance, cfg, trials, sink);
}

SuccessEstimate mc_success_rate(const std::string& allocator_id, const Instance& inst,
                                const NoiseConfig& cfg, long long trials,
                                const TrialSink& sink) {
    validate_instance(inst);
    return mc_impl(allocator_id, [&inst](std::uint64_t) { return inst; }, cfg, trials, sink);
}

std::vector<SweepRow> scaling_sweep(const std::string& allocator_id,
                                    const std::vector<SweepPoint>& grid, int repetitions,
                                    std::uint64_t seed, const NoiseConfig* cfg) {
    require(is_known_allocator(allocator_id), ErrorCode::UnknownAllocator,
            "unknown allocator '" + allocator_id + "'");
    require(!grid.empty(), ErrorCode::BadParameter, "sweep grid must be nonempty");
    require(repetitions >= 1, ErrorCode::BadParameter, "sweep needs at least one repetition");
    if (is_noisy_allocator(allocator_id))
        require(cfg != nullptr, ErrorCode::MissingNoiseConfig,
                "allocator '" + allocator_id + "' needs a noise config");

    std::vector<SweepRow> rows(grid.size());
    parallel_for_indexed(grid.size(), [&](std::size_t p) {
        const auto [n, m] = grid[p];
        const std::uint64_t point_seed = derive_seed(seed, p);
        SweepRow row;
        row.allocator = allocator_id;
        row.n = n;
        row.m = m;
        row.trials = repetitions;
        if (cfg) {
            row.rho = cfg->rho;
            row.delta = cfg->delta;
        }
        std::uint64_t total_cmp = 0, total_val = 0;
        long long successes = 0;
        for (int r = 0; r < repetitions; ++r) {
            const Instance inst =
                gen_uniform(n, m, derive_seed(point_seed, 2 * static_cast<std::uint64_t>(r) + 1));
            NoiseConfig rep_cfg;
            const NoiseConfig* run_cfg = nullptr;
            if (cfg) {
                rep_cfg = *cfg;
                rep_cfg.seed = derive_seed(point_seed, 2 * static_cast<std::uint64_t>(r));
                run_cfg = &rep_cfg;
            }
            RunReport report = run_allocator(allocator_id, inst, run_cfg, false);
            const std::uint64_t cmp = report.transcript.comparison_count;
            const std::uint64_t val = report.transcript.value_count;
            total_cmp += cmp;
            total_val += val;
            if (r == 0) {
                row.min_comparisons = row.max_comparisons = cmp;
                row.min_values = row.max_values = val;
            } else {
                row.min_comparisons = std::min(row.min_comparisons, cmp);
                row.max_comparisons = std::max(row.max_comparisons, cmp);
                row.min_values = std::min(row.min_values, val);
                row.max_values = std::max(row.max_values, val);
            }
            successes +=
                same_bundles(report.allocation, round_robin_reference(inst, false)) ? 1 : 0;
        }
        const double reps = static_cast<double>(repetitions);
        row.mean_comparisons = static_cast<double>(total_cmp) / reps;
        row.mean_values = static_cast<double>(total_val) / reps;
        row.success_rate = static_cast<double>(successes) / reps;

        const double dn = n, dm = m;
        const double mean_total = row.mean_comparisons + row.mean_values;
        row.norm_nmlog_m_over_n = mean_total / (dn * dm * std::log2(std::max(2.0, dm / dn)));
        row.norm_nm_plus_mlogm = mean_total / (dn * dm + dm * std::log2(dm));
        row.norm_nmlogm = mean_total / (dn * dm * std::log2(dm));
        row.norm_m2 = mean_total / (dm * (dm - 1.0) / 2.0);
        rows[p] = std::move(row);
    });
    return rows;
}

}  // namespace rr
