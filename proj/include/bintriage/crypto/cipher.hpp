#pragma once

#include <string_view>

#include "bintriage/bytes.hpp"

namespace bintriage::crypto {

enum class Suite { Aes256Cbc, Aes128Cbc, TdesCbc };

std::string_view suite_name(Suite s);
std::size_t suite_key_size(Suite s);   // TdesCbc accepts 16 or 24; this returns 24
std::size_t suite_block_size(Suite s);
bool suite_accepts_key_size(Suite s, std::size_t n);

// Raw block-chain transforms, no padding added or checked. Input length must
// be a positive multiple of the block size; key/iv sizes must fit the suite.
Bytes cbc_encrypt(Suite suite, ByteView key, ByteView iv, ByteView plaintext);
Bytes cbc_decrypt(Suite suite, ByteView key, ByteView iv, ByteView ciphertext);

// PKCS#7: pad to a whole number of blocks / validate and strip.
Bytes pkcs7_pad(ByteView data, std::size_t block_size);
bool pkcs7_unpad(Bytes& data, std::size_t block_size);

}  // namespace bintriage::crypto
