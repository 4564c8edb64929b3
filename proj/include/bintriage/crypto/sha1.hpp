#pragma once

#include <array>
#include <cstdint>

#include "bintriage/bytes.hpp"

namespace bintriage::crypto {

// Streaming SHA-1 (FIPS 180-4).
class Sha1 {
public:
    static constexpr std::size_t kDigestSize = 20;

    Sha1() { reset(); }

    void reset();
    void update(ByteView data);
    std::array<std::uint8_t, kDigestSize> finish();

    static std::array<std::uint8_t, kDigestSize> digest(ByteView data) {
        Sha1 h;
        h.update(data);
        return h.finish();
    }

private:
    void compress(const std::uint8_t block[64]);

    std::uint32_t state_[5];
    std::uint64_t total_len_ = 0;
    std::uint8_t buffer_[64];
    std::size_t buffered_ = 0;
};

}  // namespace bintriage::crypto
