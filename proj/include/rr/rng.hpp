#pragma once

#include <cstdint>

// Deterministic, platform-independent randomness. std::uniform_* distributions
// are implementation-defined, so every draw here goes through fixed integer
// arithmetic: splitmix64 for seeding/stream derivation, xoshiro256++ for the
// per-oracle streams.
namespace rr {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += kGoldenGamma;
    return splitmix64_mix(state);
}

// i-th output of the splitmix64 stream started at `seed`, in closed form.
// Used to derive independent child seeds (per oracle, per trial, per agent).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed + (index + 1) * kGoldenGamma);
}

class Xoshiro256pp {
public:
    Xoshiro256pp() : Xoshiro256pp(0) {}

    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Threshold such that (rng.next() < threshold) happens with probability ~p.
// Exact for p with 12 or fewer significant bits (0.25, 0.1, ...); otherwise
// off by < 2^-53 relative, far below any Monte Carlo tolerance used here.
inline std::uint64_t bernoulli_threshold(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return ~0ull;
    return static_cast<std::uint64_t>(p * 18446744073709551616.0);
}

inline bool draw_bernoulli(Xoshiro256pp& rng, std::uint64_t threshold) {
    return rng.next() < threshold;
}

// Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
inline std::uint64_t uniform_below(Xoshiro256pp& rng, std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng.next();
    u128 m = static_cast<u128>(x) * static_cast<u128>(bound);
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            x = rng.next();
            m = static_cast<u128>(x) * static_cast<u128>(bound);
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace rr
