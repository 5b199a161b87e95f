#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rr/analysis.hpp"
#include "rr/core.hpp"

using namespace rr;

namespace {

Instance make_instance(int n, int m, std::vector<std::vector<Utility>> utilities) {
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.utilities = std::move(utilities);
    return inst;
}

// Preference order of one agent, best first, straight off the utility row.
std::vector<Item> order_of(const Instance& inst, Agent agent) {
    std::vector<Item> order(inst.m);
    for (int j = 0; j < inst.m; ++j) order[j] = j + 1;
    std::sort(order.begin(), order.end(), [&](Item a, Item b) {
        return inst.value(agent, a) > inst.value(agent, b);
    });
    return order;
}

}  // namespace

TEST_CASE("validate_instance accepts distinct rows") {
    CHECK_NOTHROW(validate_instance(make_instance(2, 4, {{4, 3, 2, 1}, {1, 2, 3, 4}})));
}

TEST_CASE("validate_instance rejects duplicate utilities with agent and value") {
    try {
        validate_instance(make_instance(2, 4, {{4, 4, 2, 1}, {1, 2, 3, 4}}));
        FAIL("expected DuplicateUtility");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateUtility);
        CHECK(std::string(e.what()).find("agent 1") != std::string::npos);
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
}

TEST_CASE("validate_instance rejects bad sizes") {
    CHECK_THROWS_AS(validate_instance(make_instance(3, 2, {{2, 1}, {1, 2}, {2, 1}})), Error);
    try {
        validate_instance(make_instance(3, 2, {{2, 1}, {1, 2}, {2, 1}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FewerItemsThanAgents);
    }
    try {
        validate_instance(make_instance(1, 4, {{4, 3, 2, 1}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewAgents);
    }
    CHECK_THROWS_AS(validate_instance(make_instance(2, 2, {{2, 1}})), Error);
    CHECK_THROWS_AS(validate_instance(make_instance(2, 2, {{2, 1}, {-1, 2}})), Error);
}

TEST_CASE("reference allocation on identical preferences alternates") {
    const auto inst = make_instance(2, 4, {{4, 3, 2, 1}, {4, 3, 2, 1}});
    const Allocation alloc = round_robin_reference(inst);
    CHECK(alloc.bundles == std::vector<std::vector<Item>>{{1, 3}, {2, 4}});
    REQUIRE(alloc.trace.size() == 4);
    CHECK(alloc.trace[0] == PickEvent{1, 1, 1});
    CHECK(alloc.trace[1] == PickEvent{1, 2, 2});
    CHECK(alloc.trace[2] == PickEvent{2, 1, 3});
    CHECK(alloc.trace[3] == PickEvent{2, 2, 4});
}

TEST_CASE("reference allocation matches the m=6 reversed-pair example") {
    // Identical preferences 2 > 1 > 3 > 4 > 5 > 6.
    const Instance inst = gen_identical_from({2, 1, 3, 4, 5, 6});
    const Allocation alloc = round_robin_reference(inst);
    CHECK(alloc.bundles == std::vector<std::vector<Item>>{{2, 3, 5}, {1, 4, 6}});
}

TEST_CASE("reference allocation with disjoint favorites") {
    const auto inst = make_instance(3, 3, {{9, 1, 2}, {3, 9, 1}, {0, 1, 9}});
    const Allocation alloc = round_robin_reference(inst);
    CHECK(alloc.bundles == std::vector<std::vector<Item>>{{1}, {2}, {3}});
}

TEST_CASE("reference allocation is deterministic") {
    const Instance inst = gen_uniform(5, 23, 99);
    const Allocation a = round_robin_reference(inst);
    const Allocation b = round_robin_reference(inst);
    CHECK(a.bundles == b.bundles);
    CHECK(a.trace == b.trace);
}

TEST_CASE("bundle sizes follow the quota formula") {
    for (int n = 2; n <= 6; ++n) {
        for (int m = n; m <= 30; ++m) {
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const Instance inst = gen_uniform(n, m, derive_seed(1000 * n + m, seed));
                const Allocation alloc = round_robin_reference(inst);
                for (Agent i = 1; i <= n; ++i)
                    CHECK(static_cast<int>(alloc.bundles[i - 1].size()) ==
                          bundle_quota(n, m, i));
            }
        }
    }
}

TEST_CASE("reference output is a partition with a replayable trace") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const int m = n + static_cast<int>((seed * 7) % 40);
        const Instance inst = gen_uniform(n, m, derive_seed(42, seed));
        const Allocation alloc = round_robin_reference(inst);
        CHECK_NOTHROW(check_allocation_shape(inst, alloc));
        CHECK(trace_replays(inst, alloc));
    }
}

TEST_CASE("trace omission leaves bundles intact") {
    const Instance inst = gen_uniform(3, 11, 5);
    const Allocation with = round_robin_reference(inst, true);
    const Allocation without = round_robin_reference(inst, false);
    CHECK(without.trace.empty());
    CHECK(same_bundles(with, without));
}

TEST_CASE("round_robin_on_table breaks declared ties toward the smaller item id") {
    // Both agents see the tied pair {3, 3}; item 1 must win each time.
    const std::vector<std::vector<Utility>> declared = {{3, 3}, {3, 3}};
    const Allocation alloc = round_robin_on_table(2, 2, declared, true);
    CHECK(alloc.bundles == std::vector<std::vector<Item>>{{1}, {2}});
}

TEST_CASE("check_allocation_shape rejects malformed allocations") {
    const auto inst = make_instance(2, 4, {{4, 3, 2, 1}, {1, 2, 3, 4}});
    Allocation alloc;
    alloc.bundles = {{1, 2}, {3}};  // item 4 missing
    CHECK_THROWS_AS(check_allocation_shape(inst, alloc), Error);
    alloc.bundles = {{1, 2}, {2, 3, 4}};  // item 2 twice
    CHECK_THROWS_AS(check_allocation_shape(inst, alloc), Error);
    alloc.bundles = {{1, 2, 3, 4}};  // wrong bundle count
    CHECK_THROWS_AS(check_allocation_shape(inst, alloc), Error);
}

TEST_CASE("preference order helper agrees with utilities") {
    const Instance inst = gen_identical_from({2, 1, 3, 4, 5, 6});
    CHECK(order_of(inst, 1) == std::vector<Item>{2, 1, 3, 4, 5, 6});
}
