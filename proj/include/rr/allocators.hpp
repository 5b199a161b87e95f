#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rr/core.hpp"
#include "rr/oracle.hpp"
#include "rr/subroutines.hpp"

namespace rr {

struct RunReport {
    Allocation allocation;
    QueryTranscript transcript;
    std::string algorithm;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
    // Set by evaluate_success() when the harness holds ground truth; the
    // allocators themselves never look at it.
    std::optional<bool> matches_reference;
};

// Stable allocator identifiers:
//   reference        ground-truth replay straight off the utility table
//   worstcase        per-agent quantile buckets + bucket-local maximum finds
//   random           lazy sorted prefix lists, rebuilt via top-(|S|/n) selection
//   fullsort         sort every agent's full ranking, then replay
//   repeatedmax      maximum scan over all remaining items each turn
//   noisy-comparison per-agent boosted-comparison sort at budget delta/n
//   noisy-value      per-entry majority values, then noiseless replay
bool is_known_allocator(const std::string& id);
bool is_noisy_allocator(const std::string& id);

RunReport run_reference(const Instance& inst, bool with_trace = true);
RunReport rr_worstcase(Oracle& oracle, bool with_trace = true);
RunReport rr_random(Oracle& oracle, bool with_trace = true);
RunReport rr_fullsort_baseline(Oracle& oracle, bool with_trace = true);
RunReport rr_repeatedmax_baseline(Oracle& oracle, bool with_trace = true);
RunReport rr_noisy_comparison(Oracle& oracle, bool with_trace = true);
RunReport rr_noisy_value(Oracle& oracle, bool with_trace = true);

// Dispatch by identifier. Validates the instance, builds the oracle (noisy
// allocators require cfg) and runs. Throws UnknownAllocator or
// MissingNoiseConfig.
RunReport run_allocator(const std::string& id, const Instance& inst,
                        const NoiseConfig* cfg, bool with_trace = true);

// Fills report.matches_reference by comparing bundles against the
// ground-truth reference allocation of `inst`.
RunReport& evaluate_success(const Instance& inst, RunReport& report);

}  // namespace rr
