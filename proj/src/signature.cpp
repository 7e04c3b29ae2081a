// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/signature.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <memory>

#include "awc/errors.hpp"

namespace awc {

RandomSource system_random() {
    return [](std::span<std::uint8_t> out) {
        if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
            throw Error("system randomness unavailable");
    };
}

namespace sig {

namespace {

using PkeyPtr = std::unique_ptr<EVP_PKEY, decltype(&EVP_PKEY_free)>;
using CtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

PkeyPtr private_key(const SigningKey& key) {
    EVP_PKEY* pkey = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                                  key.seed.data(), key.seed.size());
    if (!pkey)
        throw Error("ed25519 private key construction failed");
    return {pkey, EVP_PKEY_free};
}

}  // namespace

SigningKey generate(const RandomSource& rng) {
    SigningKey key;
    rng(key.seed);
    return key;
}

VerifyKey verify_key_of(const SigningKey& key) {
    PkeyPtr pkey = private_key(key);
    VerifyKey vk;
    std::size_t len = vk.bytes.size();
    if (EVP_PKEY_get_raw_public_key(pkey.get(), vk.bytes.data(), &len) != 1 || len != 32)
        throw Error("ed25519 public key derivation failed");
    return vk;
}

std::array<std::uint8_t, 64> sign(const SigningKey& key, std::span<const std::uint8_t> msg) {
    PkeyPtr pkey = private_key(key);
    CtxPtr ctx{EVP_MD_CTX_new(), EVP_MD_CTX_free};
    std::array<std::uint8_t, 64> out;
    std::size_t len = out.size();
    if (EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1 ||
        EVP_DigestSign(ctx.get(), out.data(), &len, msg.data(), msg.size()) != 1 || len != 64)
        throw Error("ed25519 signing failed");
    return out;
}

bool verify(const VerifyKey& key, std::span<const std::uint8_t> msg,
            std::span<const std::uint8_t, 64> signature) {
    EVP_PKEY* raw = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, key.bytes.data(),
                                                key.bytes.size());
    if (!raw)
        return false;
    PkeyPtr pkey{raw, EVP_PKEY_free};
    CtxPtr ctx{EVP_MD_CTX_new(), EVP_MD_CTX_free};
    if (EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, pkey.get()) != 1)
        return false;
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), msg.data(),
                            msg.size()) == 1;
}

}  // namespace sig
}  // namespace awc
