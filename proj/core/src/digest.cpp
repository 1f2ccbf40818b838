#include "scratchoff/digest.hpp"

#include <cstring>

#include "scratchoff/errors.hpp"

namespace scratchoff {

namespace {

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace

HashKind hash_kind_from_name(const std::string& name) {
    if (name == "sha256") return HashKind::kSha256;
    if (name == "test64") return HashKind::kTest64;
    throw InvalidParameter("unknown hash function: " + name);
}

std::string hash_kind_name(HashKind kind) {
    return kind == HashKind::kSha256 ? "sha256" : "test64";
}

Digest32 keyed_test_hash(uint64_t key, std::span<const uint8_t> data) {
    uint64_t h = mix64(key ^ 0x517cc1b727220a95ULL) ^ mix64(data.size());
    size_t i = 0;
    for (; i + 8 <= data.size(); i += 8) {
        uint64_t chunk;
        std::memcpy(&chunk, data.data() + i, 8);
        h = mix64(h ^ (chunk * 0x9e3779b97f4a7c15ULL));
    }
    if (i < data.size()) {
        uint64_t chunk = 0;
        std::memcpy(&chunk, data.data() + i, data.size() - i);
        h = mix64(h ^ (chunk * 0x9e3779b97f4a7c15ULL) ^ 0xff);
    }

    Digest32 out;
    for (int lane = 0; lane < 4; ++lane) {
        const uint64_t v = mix64(h + uint64_t(lane + 1) * 0x9e3779b97f4a7c15ULL);
        for (int b = 0; b < 8; ++b) out[8 * lane + b] = uint8_t(v >> (8 * b));
    }
    return out;
}

Digest32 compute_digest(HashKind kind, uint64_t key, std::span<const uint8_t> data) {
    if (kind == HashKind::kSha256) return Sha256::hash(data);
    return keyed_test_hash(key, data);
}

} // namespace scratchoff
