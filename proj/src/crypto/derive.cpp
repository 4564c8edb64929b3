#include "bintriage/crypto/derive.hpp"

#include <cstring>

#include "bintriage/crypto/sha1.hpp"
#include "bintriage/error.hpp"

namespace bintriage::crypto {

std::array<std::uint8_t, 20> hmac_sha1(ByteView key, ByteView message) {
    std::uint8_t k[64] = {};
    if (key.size() > 64) {
        const auto digest = Sha1::digest(key);
        std::memcpy(k, digest.data(), digest.size());
    } else {
        std::memcpy(k, key.data(), key.size());
    }

    std::uint8_t ipad[64], opad[64];
    for (int i = 0; i < 64; ++i) {
        ipad[i] = k[i] ^ 0x36;
        opad[i] = k[i] ^ 0x5c;
    }

    Sha1 inner;
    inner.update({ipad, 64});
    inner.update(message);
    const auto inner_digest = inner.finish();

    Sha1 outer;
    outer.update({opad, 64});
    outer.update({inner_digest.data(), inner_digest.size()});
    return outer.finish();
}

Bytes derive_key_pbkdf2(ByteView password, ByteView salt, std::uint32_t iterations,
                        std::size_t out_len) {
    if (iterations < 1) throw TriageError("BAD_ARGUMENT", "pbkdf2: iterations must be >= 1");
    if (out_len < 1) throw TriageError("BAD_ARGUMENT", "pbkdf2: out_len must be >= 1");

    Bytes out;
    out.reserve(out_len + 19);
    std::uint32_t block_index = 1;
    while (out.size() < out_len) {
        Bytes msg(salt.begin(), salt.end());
        msg.push_back(static_cast<std::uint8_t>(block_index >> 24));
        msg.push_back(static_cast<std::uint8_t>(block_index >> 16));
        msg.push_back(static_cast<std::uint8_t>(block_index >> 8));
        msg.push_back(static_cast<std::uint8_t>(block_index));

        auto u = hmac_sha1(password, msg);
        auto acc = u;
        for (std::uint32_t i = 1; i < iterations; ++i) {
            u = hmac_sha1(password, {u.data(), u.size()});
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] ^= u[j];
        }
        out.insert(out.end(), acc.begin(), acc.end());
        ++block_index;
    }
    out.resize(out_len);
    return out;
}

Bytes derive_key_iterated_hash(ByteView password, ByteView salt, std::uint32_t iterations,
                               std::size_t out_len) {
    if (iterations < 1) throw TriageError("BAD_ARGUMENT", "iterated hash: iterations must be >= 1");

    Sha1 h;
    h.update(password);
    h.update(salt);
    auto chain = h.finish();
    for (std::uint32_t i = 1; i < iterations; ++i) {
        chain = Sha1::digest({chain.data(), chain.size()});
    }

    Bytes out(chain.begin(), chain.end());
    std::uint8_t counter = 1;
    while (out.size() < out_len) {
        Sha1 ext;
        ext.update({chain.data(), chain.size()});
        ext.update({&counter, 1});
        const auto block = ext.finish();
        out.insert(out.end(), block.begin(), block.end());
        ++counter;
    }
    out.resize(out_len);
    return out;
}

}  // namespace bintriage::crypto
