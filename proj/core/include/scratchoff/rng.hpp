#pragma once

#include <cstdint>

namespace scratchoff {

/// Counter-based deterministic generator. Every draw is a pure function of
/// (seed, stream, counter), so any point in any stream can be reproduced
/// without replaying the sequence, trials can be keyed by (seed, trial index),
/// and no global state exists. The mixer is the splitmix64 finalizer, which
/// passes the standard statistical batteries when driven by a Weyl counter.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream)
        : key_(derive_key(seed, stream)), counter_(0) {}

    /// Stateless access: the `counter`-th value of stream (seed, stream).
    static uint64_t at(uint64_t seed, uint64_t stream, uint64_t counter) {
        return mix64(derive_key(seed, stream) + counter * kGolden);
    }

    uint64_t next_u64() { return mix64(key_ + counter_++ * kGolden); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Unbiased uniform integer in [0, n) via rejection sampling.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    uint64_t counter() const { return counter_; }

private:
    static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static uint64_t mix64(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    static uint64_t derive_key(uint64_t seed, uint64_t stream) {
        return mix64(seed + kGolden) ^ mix64(stream * 0xa0761d6478bd642fULL + 1);
    }

    uint64_t key_;
    uint64_t counter_;
};

/// Fixed stream ids so independent subsystems never share a stream.
namespace streams {
inline constexpr uint64_t kPuzzleInstance = 1;
inline constexpr uint64_t kPayload = 2;
inline constexpr uint64_t kAlphaVerify = 3;
inline constexpr uint64_t kBetaVerify = 4;
inline constexpr uint64_t kTrial = 5;
inline constexpr uint64_t kRoundSchedule = 6;
} // namespace streams

} // namespace scratchoff
