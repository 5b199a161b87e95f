#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rr/analysis.hpp"
#include "rr/oracle.hpp"

using namespace rr;

namespace {

Instance two_by_four() {
    Instance inst;
    inst.n = 2;
    inst.m = 4;
    inst.utilities = {{4, 3, 2, 1}, {1, 2, 3, 4}};
    return inst;
}

NoiseConfig noise(double rho, AdversaryKind adversary = AdversaryKind::None,
                  std::uint64_t seed = 1) {
    NoiseConfig cfg;
    cfg.rho = rho;
    cfg.delta = 0.05;
    cfg.adversary = adversary;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("compare answers from the utility table") {
    const Instance inst = two_by_four();
    Oracle oracle(inst);
    CHECK(oracle.compare(1, 1, 2));
    CHECK_FALSE(oracle.compare(1, 2, 1));
    CHECK(oracle.transcript().comparison_count == 2);
}

TEST_CASE("compare rejects identical items and out-of-range ids") {
    const Instance inst = two_by_four();
    Oracle oracle(inst);
    CHECK_THROWS_AS(oracle.compare(1, 1, 1), Error);
    CHECK_THROWS_AS(oracle.compare(1, 0, 2), Error);
    CHECK_THROWS_AS(oracle.compare(3, 1, 2), Error);
    CHECK(oracle.transcript().comparison_count == 0);  // failed queries not counted
}

TEST_CASE("value reads the exact utility and counts") {
    const Instance inst = two_by_four();
    Oracle oracle(inst);
    CHECK(oracle.value(1, 1) == 4);
    CHECK(oracle.value(2, 4) == 4);
    CHECK(oracle.transcript().value_count == 2);
    CHECK(oracle.transcript().per_agent[0].values == 1);
    CHECK(oracle.transcript().per_agent[1].values == 1);
    CHECK_THROWS_AS(oracle.value(1, 5), Error);
}

TEST_CASE("noisy queries need a noise config") {
    const Instance inst = two_by_four();
    Oracle oracle(inst);
    CHECK_THROWS_AS(oracle.noisy_compare(1, 1, 2), Error);
    CHECK_THROWS_AS(oracle.noisy_value(1, 1), Error);
}

TEST_CASE("noisy_compare with rho=0 equals compare") {
    const Instance inst = gen_uniform(3, 9, 7);
    Oracle noiseless(inst);
    Oracle noisy(inst, noise(0.0));
    for (Agent a = 1; a <= 3; ++a)
        for (Item j = 1; j <= 9; ++j)
            for (Item k = 1; k <= 9; ++k) {
                if (j == k) continue;
                CHECK(noisy.noisy_compare(a, j, k) == noiseless.compare(a, j, k));
            }
}

TEST_CASE("noisy_compare flips at the configured rate") {
    const Instance inst = two_by_four();
    Oracle oracle(inst, noise(0.25));
    const int trials = 100000;
    int ones = 0;
    for (int t = 0; t < trials; ++t)
        ones += oracle.noisy_compare(1, 1, 2) ? 1 : 0;  // true answer is 1
    const double mean = static_cast<double>(ones) / trials;
    CHECK(mean > 0.74);
    CHECK(mean < 0.76);
    CHECK(oracle.transcript().comparison_count == trials);
}

TEST_CASE("equal seeds give identical answer streams") {
    const Instance inst = gen_uniform(2, 16, 3);
    Oracle a(inst, noise(0.3, AdversaryKind::None, 42));
    Oracle b(inst, noise(0.3, AdversaryKind::None, 42));
    for (int t = 0; t < 2000; ++t) {
        CHECK(a.noisy_compare(1, 1, 2) == b.noisy_compare(1, 1, 2));
        CHECK(a.noisy_value(2, 3) == b.noisy_value(2, 3));
    }
    Oracle c(inst, noise(0.3, AdversaryKind::None, 43));
    int diff = 0;
    for (int t = 0; t < 2000; ++t)
        diff += a.noisy_compare(1, 1, 2) != c.noisy_compare(1, 1, 2) ? 1 : 0;
    CHECK(diff > 0);
}

TEST_CASE("noisy_value with rho=0 equals value") {
    const Instance inst = gen_uniform(2, 8, 11);
    Oracle oracle(inst, noise(0.0, AdversaryKind::UniformRandomValue));
    for (Agent a = 1; a <= 2; ++a)
        for (Item j = 1; j <= 8; ++j)
            CHECK(oracle.noisy_value(a, j) == inst.value(a, j));
}

TEST_CASE("PlusOneSwap corrupts to m+1 and back to the missing value") {
    // Agent 1 holds {1..4}; agent 2 holds {1..5} minus 3 (so one item is worth m+1=5).
    Instance inst;
    inst.n = 2;
    inst.m = 4;
    inst.utilities = {{4, 3, 2, 1}, {5, 4, 2, 1}};
    Oracle oracle(inst, noise(0.45, AdversaryKind::PlusOneSwap));
    bool saw_corrupt_plain = false, saw_corrupt_top = false;
    for (int t = 0; t < 4000; ++t) {
        const Utility plain = oracle.noisy_value(1, 2);  // true value 3
        CHECK((plain == 3 || plain == 5));
        saw_corrupt_plain |= plain == 5;
        const Utility top = oracle.noisy_value(2, 1);  // true value 5 == m+1
        CHECK((top == 5 || top == 3));                 // 3 is agent 2's missing value
        saw_corrupt_top |= top == 3;
    }
    CHECK(saw_corrupt_plain);
    CHECK(saw_corrupt_top);
}

TEST_CASE("PlusOneSwap rejects instances outside its family") {
    Instance inst;
    inst.n = 2;
    inst.m = 3;
    inst.utilities = {{10, 2, 1}, {1, 2, 3}};
    CHECK_THROWS_AS(Oracle(inst, noise(0.25, AdversaryKind::PlusOneSwap)), Error);
    try {
        Oracle oracle(inst, noise(0.25, AdversaryKind::PlusOneSwap));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadAdversary);
    }
}

TEST_CASE("PlusOneSwap accepts every uniform-permutation instance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = gen_uniform(3, 12, seed);
        CHECK_NOTHROW(Oracle(inst, noise(0.25, AdversaryKind::PlusOneSwap)));
    }
}

TEST_CASE("PairSwap answers with the partner's value") {
    const Instance inst = gen_pair_reversal({{1, 0, 1}});  // m = 6
    Oracle oracle(inst, noise(0.45, AdversaryKind::PairSwap));
    const Utility u3 = inst.value(1, 3), u4 = inst.value(1, 4);
    bool corrupted = false;
    for (int t = 0; t < 3000; ++t) {
        const Utility got = oracle.noisy_value(1, 3);
        CHECK((got == u3 || got == u4));
        corrupted |= got == u4;
    }
    CHECK(corrupted);
}

TEST_CASE("PairSwap needs an even item count") {
    const Instance inst = gen_identical(5, 3);
    CHECK_THROWS_AS(Oracle(inst, noise(0.25, AdversaryKind::PairSwap)), Error);
    try {
        Oracle oracle(inst, noise(0.25, AdversaryKind::PairSwap));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddItemCount);
    }
}

TEST_CASE("UniformRandomValue stays in [1, m+1] and rarely matches the truth") {
    const Instance inst = gen_uniform(2, 8, 5);
    Oracle oracle(inst, noise(0.4, AdversaryKind::UniformRandomValue));
    const Utility truth = inst.value(1, 1);
    const int trials = 60000;
    int matches = 0;
    std::set<Utility> seen;
    for (int t = 0; t < trials; ++t) {
        const Utility got = oracle.noisy_value(1, 1);
        CHECK(got >= 1);
        CHECK(got <= 9);
        seen.insert(got);
        matches += got == truth ? 1 : 0;
    }
    // P(answer == truth) = (1 - rho) + rho / (m + 1) = 0.6444...
    const double rate = static_cast<double>(matches) / trials;
    CHECK(rate > 0.63);
    CHECK(rate < 0.66);
    CHECK(seen.size() == 9);  // corruption covers the whole range eventually
}

TEST_CASE("transcript totals equal per-agent sums and reset works") {
    const Instance inst = gen_uniform(3, 10, 17);
    Oracle oracle(inst, noise(0.2));
    for (int t = 0; t < 100; ++t) {
        oracle.noisy_compare(t % 3 + 1, 1, 2);
        if (t % 2 == 0) oracle.noisy_value(t % 3 + 1, 3);
    }
    const QueryTranscript snap = oracle.snapshot_transcript();
    std::uint64_t cmp = 0, val = 0;
    for (const auto& counts : snap.per_agent) {
        cmp += counts.comparisons;
        val += counts.values;
    }
    CHECK(snap.comparison_count == 100);
    CHECK(snap.value_count == 50);
    CHECK(cmp == snap.comparison_count);
    CHECK(val == snap.value_count);

    oracle.noisy_compare(1, 1, 2);  // snapshot is a value copy
    CHECK(snap.comparison_count == 100);
    CHECK(oracle.transcript().comparison_count == 101);

    oracle.reset_transcript();
    CHECK(oracle.transcript().comparison_count == 0);
    CHECK(oracle.transcript().value_count == 0);
    for (const auto& counts : oracle.transcript().per_agent) {
        CHECK(counts.comparisons == 0);
        CHECK(counts.values == 0);
    }
}

TEST_CASE("adversaries see the full ordered query history") {
    const Instance inst = gen_uniform(2, 6, 23);
    Oracle oracle(inst, noise(0.25, AdversaryKind::UniformRandomValue));
    oracle.compare(1, 1, 2);
    oracle.noisy_value(2, 3);
    oracle.value(1, 4);
    REQUIRE(oracle.history().size() == 3);
    CHECK(oracle.history()[0].agent == 1);
    CHECK(oracle.history()[0].item == 1);
    CHECK(oracle.history()[0].other == 2);
    CHECK(oracle.history()[1].agent == 2);
    CHECK(oracle.history()[1].other == 0);
    CHECK(oracle.history()[2].answer == inst.value(1, 4));
}

TEST_CASE("noise config validation") {
    NoiseConfig cfg = noise(0.25);
    CHECK_NOTHROW(validate_noise_config(cfg));
    cfg.rho = 0.5;
    CHECK_THROWS_AS(validate_noise_config(cfg), Error);
    cfg.rho = -0.1;
    CHECK_THROWS_AS(validate_noise_config(cfg), Error);
    cfg = noise(0.25);
    cfg.delta = 0.0;
    CHECK_THROWS_AS(validate_noise_config(cfg), Error);
    cfg.delta = 0.5;
    CHECK_THROWS_AS(validate_noise_config(cfg), Error);
    CHECK(adversary_from_name("PairSwap") == AdversaryKind::PairSwap);
    CHECK_THROWS_AS(adversary_from_name("nope"), Error);
}
