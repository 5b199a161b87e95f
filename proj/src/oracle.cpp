#include "rr/oracle.hpp"

#include <algorithm>

namespace rr {

const char* adversary_name(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::None: return "None";
        case AdversaryKind::PlusOneSwap: return "PlusOneSwap";
        case AdversaryKind::PairSwap: return "PairSwap";
        case AdversaryKind::UniformRandomValue: return "UniformRandomValue";
    }
    fail(ErrorCode::InternalInvariant, "unreachable adversary kind");
}

AdversaryKind adversary_from_name(const std::string& name) {
    if (name == "None") return AdversaryKind::None;
    if (name == "PlusOneSwap") return AdversaryKind::PlusOneSwap;
    if (name == "PairSwap") return AdversaryKind::PairSwap;
    if (name == "UniformRandomValue") return AdversaryKind::UniformRandomValue;
    fail(ErrorCode::BadAdversary, "unknown adversary '" + name + "'");
}

void validate_noise_config(const NoiseConfig& cfg) {
    require(cfg.rho >= 0.0 && cfg.rho < 0.5, ErrorCode::BadNoiseLevel,
            "rho must lie in [0, 1/2), got " + std::to_string(cfg.rho));
    require(cfg.delta > 0.0 && cfg.delta < 0.5, ErrorCode::BadFailureBudget,
            "delta must lie in (0, 1/2), got " + std::to_string(cfg.delta));
}

Oracle::Oracle(const Instance& inst) : inst_(&inst) {
    transcript_.per_agent.assign(inst.n, {});
}

Oracle::Oracle(const Instance& inst, const NoiseConfig& cfg)
    : inst_(&inst), cfg_(cfg), has_noise_(true) {
    transcript_.per_agent.assign(inst.n, {});
    require(cfg.rho >= 0.0 && cfg.rho < 0.5, ErrorCode::BadNoiseLevel,
            "rho must lie in [0, 1/2), got " + std::to_string(cfg.rho));
    rho_threshold_ = bernoulli_threshold(cfg.rho);
    rng_ = Xoshiro256pp(derive_seed(cfg.seed, 0));
    recording_ = cfg.adversary != AdversaryKind::None;

    if (cfg.adversary == AdversaryKind::PlusOneSwap) {
        // Well-defined exactly when each agent's utility set is [m] or
        // [m+1] minus one value; reject anything else up front.
        plus_one_missing_.assign(inst.n, 0);
        const Utility top = inst.m + 1;
        std::vector<Utility> sorted;
        for (int a = 0; a < inst.n; ++a) {
            sorted = inst.utilities[a];
            std::sort(sorted.begin(), sorted.end());
            bool plain = true;  // row == {1..m}
            for (int j = 0; j < inst.m; ++j)
                if (sorted[j] != j + 1) { plain = false; break; }
            if (plain) continue;
            // Otherwise must be {1..m+1} with exactly one gap.
            Utility missing = 0;
            Utility expect = 1;
            bool shifted_ok = true;
            for (int j = 0; j < inst.m; ++j) {
                if (sorted[j] == expect) { ++expect; continue; }
                if (missing == 0 && sorted[j] == expect + 1) {
                    missing = expect;
                    expect = sorted[j] + 1;
                    continue;
                }
                shifted_ok = false;
                break;
            }
            if (missing == 0 || expect != top + 1) shifted_ok = false;
            require(shifted_ok, ErrorCode::BadAdversary,
                    "PlusOneSwap needs each utility row to be {1..m} or {1..m+1} minus "
                    "one value; agent " + std::to_string(a + 1) + " does not qualify");
            plus_one_missing_[a] = missing;
        }
    } else if (cfg.adversary == AdversaryKind::PairSwap) {
        require(inst.m % 2 == 0, ErrorCode::OddItemCount,
                "PairSwap pairs items (2k-1, 2k) and needs an even m, got " +
                    std::to_string(inst.m));
    }
}

void Oracle::reset_transcript() {
    transcript_.comparison_count = 0;
    transcript_.value_count = 0;
    std::fill(transcript_.per_agent.begin(), transcript_.per_agent.end(), AgentCounts{});
}

const NoiseConfig& Oracle::config() const {
    require_noise();
    return cfg_;
}

Utility Oracle::corrupt(Agent agent, Item item, Utility truth) {
    switch (cfg_.adversary) {
        case AdversaryKind::None:
            return truth;  // corruption chance granted but no adversary present
        case AdversaryKind::PlusOneSwap: {
            const Utility top = inst_->m + 1;
            if (truth != top) return top;
            return plus_one_missing_[agent - 1];
        }
        case AdversaryKind::PairSwap: {
            const Item partner = (item % 2 == 1) ? item + 1 : item - 1;
            return inst_->value(agent, partner);
        }
        case AdversaryKind::UniformRandomValue:
            return static_cast<Utility>(1 + uniform_below(rng_, inst_->m + 1));
    }
    fail(ErrorCode::InternalInvariant, "unreachable adversary kind");
}

}  // namespace rr
