#include "rr/subroutines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rr {

std::pair<std::vector<Item>, std::vector<Item>> select_top(
    Agent agent, const std::vector<Item>& items, int take, Oracle& oracle,
    SelectPivot pivot) {
    require(take >= 1 && take <= static_cast<int>(items.size()), ErrorCode::BadRank,
            "selection rank must lie in [1, |S|], got " + std::to_string(take));
    std::vector<Item> work = items;
    auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
    detail::select_split(work, 0, work.size(), static_cast<std::size_t>(take), prefers, pivot);
    std::vector<Item> top(work.begin(), work.begin() + take);
    std::vector<Item> rest(work.begin() + take, work.end());
    return {std::move(top), std::move(rest)};
}

namespace {

template <class Prefers>
void quantiles_range(std::vector<Item>& v, std::size_t lo, std::size_t hi,
                     std::size_t cap, Prefers& prefers, SelectPivot pivot,
                     std::vector<std::vector<Item>>& out) {
    const std::size_t size = hi - lo;
    if (size <= cap) {
        out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(lo),
                         v.begin() + static_cast<std::ptrdiff_t>(hi));
        return;
    }
    const std::size_t take = size / 2;
    detail::select_split(v, lo, hi, take, prefers, pivot);
    quantiles_range(v, lo, lo + take, cap, prefers, pivot, out);
    quantiles_range(v, lo + take, hi, cap, prefers, pivot, out);
}

}  // namespace

QuantilePartition quantiles(Agent agent, const std::vector<Item>& items, int bucket_cap,
                            Oracle& oracle, SelectPivot pivot) {
    require(bucket_cap >= 1, ErrorCode::BadParameter, "bucket cap must be positive");
    QuantilePartition part;
    if (items.empty()) return part;
    std::vector<Item> work = items;
    auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
    quantiles_range(work, 0, work.size(), static_cast<std::size_t>(bucket_cap), prefers,
                    pivot, part.buckets);
    return part;
}

Item find_best(Agent agent, const std::vector<Item>& items, Oracle& oracle) {
    require(!items.empty(), ErrorCode::EmptySet, "find_best needs a nonempty item set");
    auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
    return detail::scan_best(items, prefers);
}

std::vector<Item> sort_items(Agent agent, std::vector<Item> items, Oracle& oracle) {
    auto prefers = [agent, &oracle](Item a, Item b) { return oracle.compare(agent, a, b); };
    detail::merge_sort(items, prefers);
    return items;
}

BoostPlan boost_count(double rho, double delta0) {
    require(rho >= 0.0 && rho < 0.5, ErrorCode::BadNoiseLevel,
            "rho must lie in [0, 1/2), got " + std::to_string(rho));
    require(delta0 > 0.0 && delta0 < 1.0, ErrorCode::BadFailureBudget,
            "delta0 must lie in (0, 1), got " + std::to_string(delta0));
    const double gap = 0.5 - rho;
    const double exponent = 2.0 * gap * gap;
    long long reps = static_cast<long long>(std::ceil(std::log(1.0 / delta0) / exponent));
    if (reps < 1) reps = 1;
    // Pin down the exact integer boundary: the smallest T with
    // exp(-exponent * T) <= delta0, immune to a one-ulp log() wobble.
    while (reps > 1 && std::exp(-exponent * static_cast<double>(reps - 1)) <= delta0) --reps;
    while (std::exp(-exponent * static_cast<double>(reps)) > delta0) ++reps;
    return BoostPlan{reps};
}

bool boosted_compare(Agent agent, Item lhs, Item rhs, const BoostPlan& plan, Oracle& oracle) {
    long long ones = 0;
    for (long long t = 0; t < plan.repetitions; ++t)
        ones += oracle.noisy_compare(agent, lhs, rhs) ? 1 : 0;
    return 2 * ones > plan.repetitions;
}

Utility majority_of(const std::vector<Utility>& observations) {
    require(!observations.empty(), ErrorCode::EmptySet, "majority of zero observations");
    std::vector<Utility> sorted = observations;
    std::sort(sorted.begin(), sorted.end());
    Utility best = sorted[0];
    std::size_t best_count = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (j - i > best_count) {  // strict: ties keep the smaller value
            best_count = j - i;
            best = sorted[i];
        }
        i = j;
    }
    return best;
}

Utility majority_value(Agent agent, Item item, const BoostPlan& plan, Oracle& oracle) {
    std::vector<Utility> observations;
    observations.reserve(static_cast<std::size_t>(plan.repetitions));
    for (long long t = 0; t < plan.repetitions; ++t)
        observations.push_back(oracle.noisy_value(agent, item));
    return majority_of(observations);
}

std::vector<Item> noisy_sort(Agent agent, std::vector<Item> items, double rho,
                             double delta0, Oracle& oracle) {
    if (items.size() <= 1) return items;
    const double comparison_bound =
        static_cast<double>(items.size()) * detail::ceil_log2(items.size());
    const BoostPlan plan = boost_count(rho, delta0 / comparison_bound);
    auto prefers = [agent, &plan, &oracle](Item a, Item b) {
        return boosted_compare(agent, a, b, plan, oracle);
    };
    detail::merge_sort(items, prefers);
    return items;
}

}  // namespace rr
