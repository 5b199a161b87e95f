#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rr/error.hpp"
#include "rr/oracle.hpp"

namespace rr {

// Pivot strategy for selection. MedianOfMedians is the worst-case-linear
// contract path; MedianOfThree is a deterministic introselect (median-of-3
// pivots, falling back to median-of-medians past a depth cap) with a much
// smaller comparison constant on non-adversarial data.
enum class SelectPivot { MedianOfMedians, MedianOfThree };

struct QuantilePartition {
    std::vector<std::vector<Item>> buckets;  // best bucket first, each size <= cap
};

struct BoostPlan {
    long long repetitions = 1;
};

namespace detail {

// All range helpers order items best-first: prefers(a, b) == true means a is
// strictly preferred. Utilities are distinct per agent, so the order is total.

template <class Prefers>
void insertion_sort(std::vector<Item>& v, std::size_t lo, std::size_t hi, Prefers& prefers) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const Item x = v[i];
        std::size_t j = i;
        while (j > lo && prefers(x, v[j - 1])) {
            v[j] = v[j - 1];
            --j;
        }
        v[j] = x;
    }
}

// Moves items preferred over `pivot` to the front of [lo, hi); returns the
// pivot's final index. Costs exactly (hi - lo - 1) comparisons.
template <class Prefers>
std::size_t partition_around(std::vector<Item>& v, std::size_t lo, std::size_t hi,
                             Item pivot, Prefers& prefers) {
    std::size_t pivot_at = lo;
    while (v[pivot_at] != pivot) ++pivot_at;
    std::swap(v[pivot_at], v[hi - 1]);
    std::size_t store = lo;
    for (std::size_t i = lo; i + 1 < hi; ++i) {
        if (prefers(v[i], pivot)) {
            std::swap(v[i], v[store]);
            ++store;
        }
    }
    std::swap(v[store], v[hi - 1]);
    return store;
}

constexpr std::size_t kSelectBase = 16;

template <class Prefers>
Item median_of_medians_pivot(std::vector<Item>& v, std::size_t lo, std::size_t hi, Prefers& prefers);

// Rearranges [lo, hi) so that position `nth` holds the item of that rank and
// everything before it is preferred to everything after it.
template <class Prefers>
void select_nth(std::vector<Item>& v, std::size_t lo, std::size_t hi, std::size_t nth,
                Prefers& prefers, SelectPivot strategy, int depth_budget) {
    while (true) {
        const std::size_t size = hi - lo;
        if (size <= kSelectBase) {
            insertion_sort(v, lo, hi, prefers);
            return;
        }
        Item pivot;
        if (strategy == SelectPivot::MedianOfThree && depth_budget-- > 0) {
            // Rank-aware probe: when the target rank sits near one end of the
            // range, an extreme of the three probes lands the pivot near that
            // end and the recursion sheds most of the range per round.
            Item a = v[lo], b = v[lo + size / 2], c = v[hi - 1];
            const std::size_t pos = nth - lo + 1;  // target rank within range
            if (4 * pos < size) {
                pivot = prefers(a, b) ? a : b;
                if (prefers(c, pivot)) pivot = c;
            } else if (4 * pos > 3 * size) {
                pivot = prefers(a, b) ? b : a;
                if (prefers(pivot, c)) pivot = c;
            } else {
                if (prefers(b, a)) std::swap(a, b);
                if (prefers(c, b)) {
                    std::swap(b, c);
                    if (prefers(b, a)) std::swap(a, b);
                }
                pivot = b;
            }
        } else {
            pivot = median_of_medians_pivot(v, lo, hi, prefers);
        }
        const std::size_t p = partition_around(v, lo, hi, pivot, prefers);
        if (p == nth) return;
        if (nth < p) {
            hi = p;
        } else {
            lo = p + 1;
        }
    }
}

template <class Prefers>
Item median_of_medians_pivot(std::vector<Item>& v, std::size_t lo, std::size_t hi, Prefers& prefers) {
    // Gather groups-of-5 medians at the front of the range, then recurse on them.
    std::size_t groups = 0;
    for (std::size_t g = lo; g < hi; g += 5) {
        const std::size_t ge = std::min(g + 5, hi);
        insertion_sort(v, g, ge, prefers);
        std::swap(v[lo + groups], v[g + (ge - g - 1) / 2]);
        ++groups;
    }
    const std::size_t mid = lo + (groups - 1) / 2;
    select_nth(v, lo, lo + groups, mid, prefers, SelectPivot::MedianOfMedians, 0);
    return v[mid];
}

// Puts the `take` most-preferred items of [lo, hi) in front (unordered).
template <class Prefers>
void select_split(std::vector<Item>& v, std::size_t lo, std::size_t hi, std::size_t take,
                  Prefers& prefers, SelectPivot strategy) {
    const std::size_t size = hi - lo;
    if (take == 0 || take == size) return;
    int depth_budget = 0;
    if (strategy == SelectPivot::MedianOfThree) {
        std::size_t s = size;
        while (s > 1) {
            s >>= 1;
            depth_budget += 2;
        }
        depth_budget += 8;
    }
    select_nth(v, lo, hi, lo + take - 1, prefers, strategy, depth_budget);
}

template <class Prefers>
void merge_sort_range(std::vector<Item>& v, std::vector<Item>& buf, std::size_t lo,
                      std::size_t hi, Prefers& prefers) {
    if (hi - lo <= 1) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    merge_sort_range(v, buf, lo, mid, prefers);
    merge_sort_range(v, buf, mid, hi, prefers);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi)
        buf[out++] = prefers(v[b], v[a]) ? v[b++] : v[a++];
    while (a < mid) buf[out++] = v[a++];
    while (b < hi) buf[out++] = v[b++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
              buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
}

// Plain merge sort, best-first. Comparison count <= |v| * ceil(log2 |v|).
template <class Prefers>
void merge_sort(std::vector<Item>& v, Prefers& prefers) {
    if (v.size() <= 1) return;
    std::vector<Item> buf(v.size());
    merge_sort_range(v, buf, 0, v.size(), prefers);
}

template <class Prefers>
Item scan_best(const std::vector<Item>& v, Prefers& prefers) {
    Item best = v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        if (prefers(v[i], best)) best = v[i];
    return best;
}

inline int ceil_log2(std::size_t n) {
    int k = 0;
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
        ++k;
    }
    return k;
}

}  // namespace detail

// Splits `items` into (top, rest) with |top| == take and every item of `top`
// preferred by `agent` to every item of `rest`. Deterministic; O(|items|)
// comparisons on the MedianOfMedians path.
std::pair<std::vector<Item>, std::vector<Item>> select_top(
    Agent agent, const std::vector<Item>& items, int take, Oracle& oracle,
    SelectPivot pivot = SelectPivot::MedianOfMedians);

// Partition into preference-ordered buckets of size <= bucket_cap: split at
// rank floor(|S|/2) and recurse until |S| <= bucket_cap.
QuantilePartition quantiles(Agent agent, const std::vector<Item>& items, int bucket_cap,
                            Oracle& oracle, SelectPivot pivot = SelectPivot::MedianOfMedians);

// Argmax by linear scan: exactly |items| - 1 comparisons.
Item find_best(Agent agent, const std::vector<Item>& items, Oracle& oracle);

// Full preference order, best first, by merge sort.
std::vector<Item> sort_items(Agent agent, std::vector<Item> items, Oracle& oracle);

// Repetitions T = ceil(ln(1/delta0) / (2 (1/2 - rho)^2)): the smallest T whose
// Hoeffding majority-error bound exp(-2 T (1/2 - rho)^2) is at most delta0.
// rho = 0 is the degenerate noiseless case. Requires delta0 in (0, 1).
BoostPlan boost_count(double rho, double delta0);

// Majority over plan.repetitions independent noisy comparisons; an even split
// counts as "not preferred".
bool boosted_compare(Agent agent, Item lhs, Item rhs, const BoostPlan& plan, Oracle& oracle);

// Most frequent answer, smallest value on ties. Exposed for direct testing.
Utility majority_of(const std::vector<Utility>& observations);

// Majority value over plan.repetitions independent noisy value queries.
Utility majority_value(Agent agent, Item item, const BoostPlan& plan, Oracle& oracle);

// Merge sort over boosted comparisons. Each logical comparison gets budget
// delta0 / (|S| * ceil(log2 |S|)), so a union bound over at most that many
// comparisons keeps the whole-order failure probability at most delta0.
std::vector<Item> noisy_sort(Agent agent, std::vector<Item> items, double rho,
                             double delta0, Oracle& oracle);

}  // namespace rr
