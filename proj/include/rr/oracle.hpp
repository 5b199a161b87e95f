#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rr/core.hpp"
#include "rr/error.hpp"
#include "rr/rng.hpp"

namespace rr {

enum class AdversaryKind {
    None,
    PlusOneSwap,         // corrupt to m+1, or to the missing value for a true m+1
    PairSwap,            // corrupt to the value of the item's partner in (2k-1, 2k)
    UniformRandomValue,  // corrupt to a uniform integer in [1, m+1]
};

const char* adversary_name(AdversaryKind kind);
AdversaryKind adversary_from_name(const std::string& name);

struct NoiseConfig {
    double rho = 0.25;    // per-query corruption probability, [0, 1/2); 0 = degenerate noiseless
    double delta = 0.05;  // allocator failure budget, (0, 1/2)
    AdversaryKind adversary = AdversaryKind::None;
    std::uint64_t seed = 0;
};

void validate_noise_config(const NoiseConfig& cfg);

struct AgentCounts {
    std::uint64_t comparisons = 0;
    std::uint64_t values = 0;

    bool operator==(const AgentCounts&) const = default;
};

struct QueryTranscript {
    std::uint64_t comparison_count = 0;
    std::uint64_t value_count = 0;
    std::vector<AgentCounts> per_agent;  // index agent-1

    std::uint64_t total() const { return comparison_count + value_count; }
};

// One past query as shown to a value adversary: comparison queries carry both
// items, value queries have other == 0.
struct QueryRecord {
    Agent agent = 0;
    Item item = 0;
    Item other = 0;
    Utility answer = 0;
};

// Instrumented query access to one Instance. Every query an algorithm makes
// goes through here and is counted; nothing else in the library touches
// utilities on an algorithm's behalf.
//
// Stateful single-owner object: mutable counters, one RNG stream derived from
// cfg.seed. Never share an Oracle across threads; distinct oracles over the
// same Instance are fine.
class Oracle {
public:
    explicit Oracle(const Instance& inst);
    Oracle(const Instance& inst, const NoiseConfig& cfg);

    bool compare(Agent agent, Item lhs, Item rhs) {
        check_pair(agent, lhs, rhs);
        count_comparison(agent);
        const bool answer = inst_->value(agent, lhs) > inst_->value(agent, rhs);
        if (recording_) history_.push_back({agent, lhs, rhs, answer ? 1 : 0});
        return answer;
    }

    // Truthful answer XOR Bernoulli(rho); fresh independent noise every call,
    // including repeats of the same triple.
    bool noisy_compare(Agent agent, Item lhs, Item rhs) {
        require_noise();
        check_pair(agent, lhs, rhs);
        count_comparison(agent);
        const bool truth = inst_->value(agent, lhs) > inst_->value(agent, rhs);
        const bool answer = truth != draw_bernoulli(rng_, rho_threshold_);
        if (recording_) history_.push_back({agent, lhs, rhs, answer ? 1 : 0});
        return answer;
    }

    Utility value(Agent agent, Item item) {
        check_item(agent, item);
        count_value(agent);
        const Utility answer = inst_->value(agent, item);
        if (recording_) history_.push_back({agent, item, 0, answer});
        return answer;
    }

    // True utility with probability 1-rho; otherwise the adversary picks the
    // answer with full knowledge of the instance and the query history.
    Utility noisy_value(Agent agent, Item item) {
        require_noise();
        check_item(agent, item);
        count_value(agent);
        const Utility truth = inst_->value(agent, item);
        Utility answer = truth;
        if (draw_bernoulli(rng_, rho_threshold_)) answer = corrupt(agent, item, truth);
        if (recording_) history_.push_back({agent, item, 0, answer});
        return answer;
    }

    void reset_transcript();
    QueryTranscript snapshot_transcript() const { return transcript_; }
    const QueryTranscript& transcript() const { return transcript_; }

    const Instance& instance() const { return *inst_; }
    bool has_noise() const { return has_noise_; }
    const NoiseConfig& config() const;
    const std::vector<QueryRecord>& history() const { return history_; }

private:
    void check_agent(Agent agent) const {
        if (agent < 1 || agent > inst_->n)
            fail(ErrorCode::OutOfRange, "agent " + std::to_string(agent) + " out of range");
    }
    void check_item(Agent agent, Item item) const {
        check_agent(agent);
        if (item < 1 || item > inst_->m)
            fail(ErrorCode::OutOfRange, "item " + std::to_string(item) + " out of range");
    }
    void check_pair(Agent agent, Item lhs, Item rhs) const {
        check_item(agent, lhs);
        if (rhs < 1 || rhs > inst_->m)
            fail(ErrorCode::OutOfRange, "item " + std::to_string(rhs) + " out of range");
        if (lhs == rhs)
            fail(ErrorCode::SameItemCompared,
                 "comparison needs two distinct items, got item " + std::to_string(lhs) + " twice");
    }
    void count_comparison(Agent agent) {
        ++transcript_.comparison_count;
        ++transcript_.per_agent[agent - 1].comparisons;
    }
    void count_value(Agent agent) {
        ++transcript_.value_count;
        ++transcript_.per_agent[agent - 1].values;
    }
    void require_noise() const {
        if (!has_noise_)
            fail(ErrorCode::MissingNoiseConfig, "noisy query on an oracle built without a noise config");
    }

    Utility corrupt(Agent agent, Item item, Utility truth);

    const Instance* inst_;
    QueryTranscript transcript_;
    NoiseConfig cfg_;
    bool has_noise_ = false;
    bool recording_ = false;
    std::uint64_t rho_threshold_ = 0;
    Xoshiro256pp rng_;
    std::vector<Utility> plus_one_missing_;  // per agent; 0 when the row is exactly [m]
    std::vector<QueryRecord> history_;
};

}  // namespace rr
