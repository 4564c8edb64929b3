#include "bintriage/crypto/sha1.hpp"

#include <bit>
#include <cstring>

namespace bintriage::crypto {

void Sha1::reset() {
    state_[0] = 0x67452301u;
    state_[1] = 0xefcdab89u;
    state_[2] = 0x98badcfeu;
    state_[3] = 0x10325476u;
    state_[4] = 0xc3d2e1f0u;
    total_len_ = 0;
    buffered_ = 0;
}

void Sha1::compress(const std::uint8_t block[64]) {
    std::uint32_t w[80];
    for (int t = 0; t < 16; ++t) {
        w[t] = static_cast<std::uint32_t>(block[t * 4]) << 24 |
               static_cast<std::uint32_t>(block[t * 4 + 1]) << 16 |
               static_cast<std::uint32_t>(block[t * 4 + 2]) << 8 |
               static_cast<std::uint32_t>(block[t * 4 + 3]);
    }
    for (int t = 16; t < 80; ++t) {
        w[t] = std::rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1);
    }

    std::uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3], e = state_[4];
    for (int t = 0; t < 80; ++t) {
        std::uint32_t f, k;
        if (t < 20) {
            f = (b & c) | (~b & d);
            k = 0x5a827999u;
        } else if (t < 40) {
            f = b ^ c ^ d;
            k = 0x6ed9eba1u;
        } else if (t < 60) {
            f = (b & c) | (b & d) | (c & d);
            k = 0x8f1bbcdcu;
        } else {
            f = b ^ c ^ d;
            k = 0xca62c1d6u;
        }
        const std::uint32_t tmp = std::rotl(a, 5) + f + e + k + w[t];
        e = d;
        d = c;
        c = std::rotl(b, 30);
        b = a;
        a = tmp;
    }
    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
}

void Sha1::update(ByteView data) {
    total_len_ += data.size();
    std::size_t off = 0;
    if (buffered_ > 0) {
        const std::size_t take = std::min(data.size(), 64 - buffered_);
        std::memcpy(buffer_ + buffered_, data.data(), take);
        buffered_ += take;
        off = take;
        if (buffered_ == 64) {
            compress(buffer_);
            buffered_ = 0;
        }
    }
    while (off + 64 <= data.size()) {
        compress(data.data() + off);
        off += 64;
    }
    if (off < data.size()) {
        std::memcpy(buffer_, data.data() + off, data.size() - off);
        buffered_ = data.size() - off;
    }
}

std::array<std::uint8_t, Sha1::kDigestSize> Sha1::finish() {
    const std::uint64_t bit_len = total_len_ * 8;
    const std::uint8_t pad = 0x80;
    update({&pad, 1});
    static const std::uint8_t zeros[64] = {};
    while (buffered_ != 56) {
        const std::size_t take = buffered_ < 56 ? 56 - buffered_ : 64 - buffered_;
        update({zeros, take});
    }
    std::uint8_t len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = static_cast<std::uint8_t>(bit_len >> (56 - 8 * i));
    update({len_be, 8});

    std::array<std::uint8_t, kDigestSize> out;
    for (int i = 0; i < 5; ++i) {
        out[i * 4] = static_cast<std::uint8_t>(state_[i] >> 24);
        out[i * 4 + 1] = static_cast<std::uint8_t>(state_[i] >> 16);
        out[i * 4 + 2] = static_cast<std::uint8_t>(state_[i] >> 8);
        out[i * 4 + 3] = static_cast<std::uint8_t>(state_[i]);
    }
    reset();
    return out;
}

}  // namespace bintriage::crypto
