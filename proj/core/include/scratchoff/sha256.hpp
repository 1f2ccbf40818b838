#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace scratchoff {

using Digest32 = std::array<uint8_t, 32>;

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(std::span<const uint8_t> data);
    Digest32 finish();

    static Digest32 hash(std::span<const uint8_t> data) {
        Sha256 h;
        h.update(data);
        return h.finish();
    }

private:
    void compress(const uint8_t* block);

    std::array<uint32_t, 8> state_;
    std::array<uint8_t, 64> buffer_;
    uint64_t total_len_;
    size_t buffer_len_;
};

std::string to_hex(std::span<const uint8_t> bytes);

} // namespace scratchoff
