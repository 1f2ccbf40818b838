#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scratchoff/digest.hpp"
#include "scratchoff/puzzle.hpp"

namespace scratchoff {

/// 256-bit difficulty target T = floor(2^(256 - d)). A digest wins when,
/// read as a big-endian integer, it is strictly below T. d = 0 makes T =
/// 2^256, which covers every digest and is carried as a flag.
struct Target256 {
    std::array<uint8_t, 32> bytes{};
    bool covers_all = false;

    static Target256 from_difficulty(double d);
    bool admits(const Digest32& digest) const;
};

struct HashPuzzleConfig {
    PuzzleParams params;
    HashKind hash = HashKind::kSha256;
    uint64_t test_key = 0; // key for the test64 hash; ignored for sha256
    Target256 target;
};

/// A winning (nonce, digest) pair. The digest is H(puz.id || m || nonce_le8)
/// and must fall below the configured target.
struct NonceTicket {
    uint64_t nonce = 0;
    Digest32 digest{};

    /// Wire form: 8-byte little-endian nonce followed by the 32-byte digest.
    std::array<uint8_t, 40> serialize() const;
    static NonceTicket deserialize(std::span<const uint8_t> bytes);

    bool operator==(const NonceTicket&) const = default;
};

struct WorkResult {
    std::optional<NonceTicket> ticket; // empty = exhausted the budget
    uint64_t evaluations = 0;          // hash calls actually spent
};

/// Builds a puzzle family at the given difficulty. security_lambda must be
/// 256 (the hash width); d outside [0, 64] throws DifficultyOutOfRange.
HashPuzzleConfig gen(uint32_t security_lambda, double difficulty_d,
                     uint64_t unit_work_t = 256, uint64_t init_overhead_t0 = 0,
                     double gamma = 1.0, HashKind hash = HashKind::kSha256,
                     uint64_t test_key = 0);

/// Scans nonces start_nonce, start_nonce + 1, ... for at most `budget`
/// attempts, stopping early at the first digest below target. Exhaustion is
/// not an error; the caller reads `evaluations` for incompressibility
/// accounting. Budgets above 2^32 are rejected.
WorkResult work(const HashPuzzleConfig& config, const PuzzleInstance& puz,
                const Payload& m, uint64_t budget, uint64_t start_nonce = 0);

/// Recomputes the digest for (puz, m, ticket.nonce) — exactly one hash
/// evaluation — and accepts iff it matches the ticket and beats the target.
bool verify(const HashPuzzleConfig& config, const PuzzleInstance& puz,
            const Payload& m, const NonceTicket& ticket);

/// PuzzleScheme adapter so generic harnesses can drive the hash puzzle.
class HashPuzzleScheme final : public PuzzleScheme {
public:
    explicit HashPuzzleScheme(HashPuzzleConfig config) : config_(std::move(config)) {}

    std::string name() const override { return "hash_puzzle"; }
    const PuzzleParams& params() const override { return config_.params; }
    const HashPuzzleConfig& config() const { return config_; }

    std::pair<PuzzleInstance, Payload> sample_instance(uint64_t seed,
                                                       uint64_t index) const override;
    MaybeTicket work(const PuzzleInstance& puz, const Payload& m,
                     uint64_t seed) override;
    bool verify(const PuzzleInstance& puz, const Payload& m, const Ticket& ticket,
                uint64_t seed) const override;
    bool deterministic_verify() const override { return true; }

    uint64_t last_evaluations() const { return last_evaluations_; }

private:
    HashPuzzleConfig config_;
    uint64_t last_evaluations_ = 0;
};

/// Samples a fresh puzzle id of params-width bytes from a seeded stream.
PuzzleInstance sample_puzzle_instance(const PuzzleParams& params, uint64_t seed,
                                      uint64_t index);

} // namespace scratchoff
