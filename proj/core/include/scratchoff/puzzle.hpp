#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scratchoff/errors.hpp"

namespace scratchoff {

/// The parameter tuple governing a scratch-off puzzle family, plus the
/// security parameter fixing hash/identifier widths.
///
///   difficulty_d      log2 difficulty; a single attempt wins w.p. 2^-d
///   unit_work_t       attempts consumed by one honest Work call
///   init_overhead_t0  attempts of one-time setup charged before solving
///   gamma             best speedup factor granted to an adversary (>= 1)
///   security_lambda   bit length of hashes and puzzle identifiers
struct PuzzleParams {
    double difficulty_d = 8.0;
    uint64_t unit_work_t = 256;
    uint64_t init_overhead_t0 = 0;
    double gamma = 1.0;
    uint32_t security_lambda = 256;

    void validate() const {
        if (difficulty_d < 0.0) throw InvalidParameter("difficulty_d must be >= 0");
        if (unit_work_t < 1) throw InvalidParameter("unit_work_t must be >= 1");
        if (gamma < 1.0) throw InvalidParameter("gamma must be >= 1");
        if (security_lambda == 0 || security_lambda % 8 != 0)
            throw InvalidParameter("security_lambda must be a positive multiple of 8");
    }

    double attempt_probability() const { return std::exp2(-difficulty_d); }
};

/// A puzzle instance: an opaque identifier of security_lambda / 8 bytes.
/// Instances with equal ids are the same puzzle.
struct PuzzleInstance {
    std::vector<uint8_t> id;

    bool operator==(const PuzzleInstance&) const = default;
};

/// The payload a ticket commits to.
struct Payload {
    std::vector<uint8_t> bytes;

    static Payload from_string(const std::string& s) {
        return Payload{std::vector<uint8_t>(s.begin(), s.end())};
    }

    bool operator==(const Payload&) const = default;
};

/// Evidence bodies a ticket can carry, one per puzzle flavour.
struct NonceEvidence {
    uint64_t nonce = 0;

    bool operator==(const NonceEvidence&) const = default;
};

struct BetEvidence {
    // (node id, amount) pairs, sorted by node id.
    std::vector<std::pair<uint64_t, uint64_t>> bets;

    bool operator==(const BetEvidence&) const = default;
};

struct SignatureEvidence {
    uint64_t node_id = 0;
    std::array<uint8_t, 32> tag{};

    bool operator==(const SignatureEvidence&) const = default;
};

/// Immutable solving evidence. `value` is the byte string Verify checks
/// (a digest, a signature tag, or a serialized allocation).
struct Ticket {
    uint64_t solver_id = 0;
    std::variant<NonceEvidence, BetEvidence, SignatureEvidence> body;
    std::vector<uint8_t> value;

    bool operator==(const Ticket&) const = default;
};

/// "No ticket": Work exhausted its budget without a win.
using MaybeTicket = std::optional<Ticket>;

/// The algorithm triple every puzzle flavour implements. Instance sampling is
/// part of the interface so harnesses can drive any scheme from a bare seed.
/// Verify may be randomized, but must be reproducible from (seed, ticket).
class PuzzleScheme {
public:
    virtual ~PuzzleScheme() = default;

    virtual std::string name() const = 0;
    virtual const PuzzleParams& params() const = 0;

    virtual std::pair<PuzzleInstance, Payload> sample_instance(uint64_t seed,
                                                               uint64_t index) const = 0;
    virtual MaybeTicket work(const PuzzleInstance& puz, const Payload& m,
                             uint64_t seed) = 0;
    virtual bool verify(const PuzzleInstance& puz, const Payload& m,
                        const Ticket& ticket, uint64_t seed) const = 0;

    /// True when verify is a pure recomputation with no random draw.
    virtual bool deterministic_verify() const = 0;
};

} // namespace scratchoff
