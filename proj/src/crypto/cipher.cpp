#include "bintriage/crypto/cipher.hpp"

#include <openssl/evp.h>

#include <memory>

#include "bintriage/error.hpp"

namespace bintriage::crypto {

std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::Aes256Cbc: return "AES_256_CBC";
        case Suite::Aes128Cbc: return "AES_128_CBC";
        case Suite::TdesCbc: return "TDES_CBC";
    }
    return "?";
}

std::size_t suite_key_size(Suite s) {
    switch (s) {
        case Suite::Aes256Cbc: return 32;
        case Suite::Aes128Cbc: return 16;
        case Suite::TdesCbc: return 24;
    }
    return 0;
}

std::size_t suite_block_size(Suite s) { return s == Suite::TdesCbc ? 8 : 16; }

bool suite_accepts_key_size(Suite s, std::size_t n) {
    switch (s) {
        case Suite::Aes256Cbc: return n == 32;
        case Suite::Aes128Cbc: return n == 16;
        case Suite::TdesCbc: return n == 16 || n == 24;  // 2-key and 3-key
    }
    return false;
}

namespace {

using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

const EVP_CIPHER* evp_for(Suite s, std::size_t key_size) {
    switch (s) {
        case Suite::Aes256Cbc: return EVP_aes_256_cbc();
        case Suite::Aes128Cbc: return EVP_aes_128_cbc();
        case Suite::TdesCbc: return key_size == 16 ? EVP_des_ede_cbc() : EVP_des_ede3_cbc();
    }
    return nullptr;
}

Bytes run_cipher(Suite suite, ByteView key, ByteView iv, ByteView input, bool encrypt) {
    const std::size_t block = suite_block_size(suite);
    if (input.empty() || input.size() % block != 0) {
        throw TriageError("BAD_BLOCK_LENGTH", "cipher input must be a positive multiple of " +
                                                  std::to_string(block) + " bytes");
    }
    if (!suite_accepts_key_size(suite, key.size())) {
        throw TriageError("BAD_KEY_LENGTH", "key length unsupported for suite");
    }
    if (iv.size() != block) {
        throw TriageError("BAD_IV_LENGTH", "iv length must equal the suite block size");
    }

    CtxPtr ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx) throw TriageError("CRYPTO_BACKEND", "EVP_CIPHER_CTX_new failed");
    if (EVP_CipherInit_ex(ctx.get(), evp_for(suite, key.size()), nullptr, key.data(), iv.data(),
                          encrypt ? 1 : 0) != 1) {
        throw TriageError("CRYPTO_BACKEND", "EVP_CipherInit_ex failed");
    }
    EVP_CIPHER_CTX_set_padding(ctx.get(), 0);

    Bytes out(input.size() + block);
    int n1 = 0, n2 = 0;
    if (EVP_CipherUpdate(ctx.get(), out.data(), &n1, input.data(),
                         static_cast<int>(input.size())) != 1 ||
        EVP_CipherFinal_ex(ctx.get(), out.data() + n1, &n2) != 1) {
        throw TriageError("CRYPTO_BACKEND", "cipher transform failed");
    }
    out.resize(static_cast<std::size_t>(n1 + n2));
    return out;
}

}  // namespace

Bytes cbc_encrypt(Suite suite, ByteView key, ByteView iv, ByteView plaintext) {
    return run_cipher(suite, key, iv, plaintext, true);
}

Bytes cbc_decrypt(Suite suite, ByteView key, ByteView iv, ByteView ciphertext) {
    return run_cipher(suite, key, iv, ciphertext, false);
}

Bytes pkcs7_pad(ByteView data, std::size_t block_size) {
    const std::size_t pad = block_size - data.size() % block_size;
    Bytes out(data.begin(), data.end());
    out.insert(out.end(), pad, static_cast<std::uint8_t>(pad));
    return out;
}

bool pkcs7_unpad(Bytes& data, std::size_t block_size) {
    if (data.empty() || data.size() % block_size != 0) return false;
    const std::uint8_t pad = data.back();
    if (pad == 0 || pad > block_size) return false;
    for (std::size_t i = data.size() - pad; i < data.size(); ++i) {
        if (data[i] != pad) return false;
    }
    data.resize(data.size() - pad);
    return true;
}

}  // namespace bintriage::crypto
