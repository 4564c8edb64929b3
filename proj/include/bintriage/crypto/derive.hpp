#pragma once

#include <array>
#include <cstdint>

#include "bintriage/bytes.hpp"

namespace bintriage::crypto {

std::array<std::uint8_t, 20> hmac_sha1(ByteView key, ByteView message);

// PBKDF2 with HMAC-SHA1 as the pseudorandom function (RFC 8018 construction).
// The product-class default iteration count is 10,000.
inline constexpr std::uint32_t kDefaultPbkdf2Iterations = 10000;
Bytes derive_key_pbkdf2(ByteView password, ByteView salt, std::uint32_t iterations,
                        std::size_t out_len);

// Iterated-SHA1 password scheme:
//   H_1 = SHA1(password || salt), H_{i+1} = SHA1(H_i)
// Output is the leading out_len bytes of
//   H_n || SHA1(H_n || 0x01) || SHA1(H_n || 0x02) || ...
// Defaults: 1,000 iterations, salt = ASCII "Kosher".
inline constexpr std::uint32_t kDefaultIteratedHashIterations = 1000;
inline constexpr std::string_view kDefaultIteratedHashSalt = "Kosher";
Bytes derive_key_iterated_hash(ByteView password, ByteView salt, std::uint32_t iterations,
                               std::size_t out_len);

}  // namespace bintriage::crypto
