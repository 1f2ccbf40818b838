#include "scratchoff/hash_puzzle.hpp"

#include <cmath>
#include <cstring>

#include "scratchoff/rng.hpp"

namespace scratchoff {

Target256 Target256::from_difficulty(double d) {
    if (std::isnan(d) || d < 0.0 || d > 64.0)
        throw DifficultyOutOfRange("difficulty must lie in [0, 64]");

    Target256 t;
    if (d == 0.0) {
        t.covers_all = true;
        return t;
    }

    // T = floor(2^(256 - d)) = m << (i - 52) with e = 256 - d split into the
    // integer part i and mantissa m = floor(2^frac * 2^52), so integer d maps
    // to an exact power of two.
    const double e = 256.0 - d;
    const int i = static_cast<int>(std::floor(e));
    const double frac = e - i;
    const uint64_t mantissa = static_cast<uint64_t>(std::floor(std::exp2(frac) * 0x1p52));

    uint64_t limbs[4] = {0, 0, 0, 0}; // little-endian 64-bit limbs
    const int offset = i - 52;        // in [140, 204) for d in (0, 64]
    const int limb = offset / 64;
    const int shift = offset % 64;
    limbs[limb] |= mantissa << shift;
    if (shift > 11 && limb + 1 < 4) limbs[limb + 1] |= mantissa >> (64 - shift);

    for (int b = 0; b < 32; ++b)
        t.bytes[31 - b] = uint8_t(limbs[b / 8] >> (8 * (b % 8)));
    return t;
}

bool Target256::admits(const Digest32& digest) const {
    if (covers_all) return true;
    // big-endian integer order == lexicographic byte order
    return std::memcmp(digest.data(), bytes.data(), 32) < 0;
}

std::array<uint8_t, 40> NonceTicket::serialize() const {
    std::array<uint8_t, 40> out{};
    for (int i = 0; i < 8; ++i) out[i] = uint8_t(nonce >> (8 * i));
    std::memcpy(out.data() + 8, digest.data(), 32);
    return out;
}

NonceTicket NonceTicket::deserialize(std::span<const uint8_t> bytes) {
    if (bytes.size() != 40) throw InvalidParameter("nonce ticket must be 40 bytes");
    NonceTicket t;
    for (int i = 0; i < 8; ++i) t.nonce |= uint64_t(bytes[i]) << (8 * i);
    std::memcpy(t.digest.data(), bytes.data() + 8, 32);
    return t;
}

HashPuzzleConfig gen(uint32_t security_lambda, double difficulty_d,
                     uint64_t unit_work_t, uint64_t init_overhead_t0, double gamma,
                     HashKind hash, uint64_t test_key) {
    if (security_lambda != 256)
        throw InvalidParameter("hash puzzle fixes security_lambda = 256");
    HashPuzzleConfig config;
    config.params = PuzzleParams{difficulty_d, unit_work_t, init_overhead_t0, gamma,
                                 security_lambda};
    config.target = Target256::from_difficulty(difficulty_d); // range-checks d
    config.params.validate();
    config.hash = hash;
    config.test_key = test_key;
    return config;
}

namespace {

Digest32 attempt_digest(const HashPuzzleConfig& config, const PuzzleInstance& puz,
                        const Payload& m, uint64_t nonce) {
    std::vector<uint8_t> preimage;
    preimage.reserve(puz.id.size() + m.bytes.size() + 8);
    preimage.insert(preimage.end(), puz.id.begin(), puz.id.end());
    preimage.insert(preimage.end(), m.bytes.begin(), m.bytes.end());
    for (int i = 0; i < 8; ++i) preimage.push_back(uint8_t(nonce >> (8 * i)));
    return compute_digest(config.hash, config.test_key, preimage);
}

} // namespace

WorkResult work(const HashPuzzleConfig& config, const PuzzleInstance& puz,
                const Payload& m, uint64_t budget, uint64_t start_nonce) {
    if (budget > (uint64_t(1) << 32))
        throw InvalidParameter("work budget capped at 2^32 attempts");

    WorkResult result;
    for (uint64_t i = 0; i < budget; ++i) {
        const uint64_t nonce = start_nonce + i;
        const Digest32 digest = attempt_digest(config, puz, m, nonce);
        ++result.evaluations;
        if (config.target.admits(digest)) {
            result.ticket = NonceTicket{nonce, digest};
            break;
        }
    }
    return result;
}

bool verify(const HashPuzzleConfig& config, const PuzzleInstance& puz,
            const Payload& m, const NonceTicket& ticket) {
    const Digest32 digest = attempt_digest(config, puz, m, ticket.nonce);
    return digest == ticket.digest && config.target.admits(digest);
}

PuzzleInstance sample_puzzle_instance(const PuzzleParams& params, uint64_t seed,
                                      uint64_t index) {
    CounterRng rng(seed, streams::kPuzzleInstance + (index << 8));
    PuzzleInstance puz;
    puz.id.resize(params.security_lambda / 8);
    for (size_t i = 0; i < puz.id.size(); i += 8) {
        const uint64_t v = rng.next_u64();
        for (size_t b = 0; b < 8 && i + b < puz.id.size(); ++b)
            puz.id[i + b] = uint8_t(v >> (8 * b));
    }
    return puz;
}

std::pair<PuzzleInstance, Payload> HashPuzzleScheme::sample_instance(
    uint64_t seed, uint64_t index) const {
    PuzzleInstance puz = sample_puzzle_instance(config_.params, seed, index);
    CounterRng rng(seed, streams::kPayload + (index << 8));
    Payload m;
    m.bytes.resize(8);
    const uint64_t v = rng.next_u64();
    for (int b = 0; b < 8; ++b) m.bytes[b] = uint8_t(v >> (8 * b));
    return {std::move(puz), std::move(m)};
}

MaybeTicket HashPuzzleScheme::work(const PuzzleInstance& puz, const Payload& m,
                                   uint64_t /*seed*/) {
    const WorkResult result =
        scratchoff::work(config_, puz, m, config_.params.unit_work_t);
    last_evaluations_ = result.evaluations;
    if (!result.ticket) return std::nullopt;
    Ticket ticket;
    ticket.solver_id = 0;
    ticket.body = NonceEvidence{result.ticket->nonce};
    const auto wire = result.ticket->serialize();
    ticket.value.assign(wire.begin(), wire.end());
    return ticket;
}

bool HashPuzzleScheme::verify(const PuzzleInstance& puz, const Payload& m,
                              const Ticket& ticket, uint64_t /*seed*/) const {
    const auto* nonce = std::get_if<NonceEvidence>(&ticket.body);
    if (nonce == nullptr || ticket.value.size() != 40) return false;
    const NonceTicket wire = NonceTicket::deserialize(ticket.value);
    if (wire.nonce != nonce->nonce) return false;
    return scratchoff::verify(config_, puz, m, wire);
}

} // namespace scratchoff
