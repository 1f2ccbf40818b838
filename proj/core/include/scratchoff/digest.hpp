#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "scratchoff/sha256.hpp"

namespace scratchoff {

/// The registry of 256-bit hash functions a puzzle may be instantiated with.
/// `kSha256` is the production choice. `kTest64` is a keyed mixing function:
/// not collision resistant, but a fast seeded pseudorandom function whose
/// winning nonces tests can precompute and pin down.
enum class HashKind {
    kSha256,
    kTest64,
};

HashKind hash_kind_from_name(const std::string& name);
std::string hash_kind_name(HashKind kind);

/// 32-byte keyed test hash. Pure function of (key, data).
Digest32 keyed_test_hash(uint64_t key, std::span<const uint8_t> data);

Digest32 compute_digest(HashKind kind, uint64_t key, std::span<const uint8_t> data);

} // namespace scratchoff
