// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace awc {

// Byte-filling randomness source; keygen and verification challenges draw
// from it so tests can run deterministically.
using RandomSource = std::function<void(std::span<std::uint8_t>)>;

// Process-wide CSPRNG (OpenSSL RAND_bytes).
RandomSource system_random();

namespace sig {

struct SigningKey {
    std::array<std::uint8_t, 32> seed{};
};

struct VerifyKey {
    std::array<std::uint8_t, 32> bytes{};
    friend bool operator==(const VerifyKey&, const VerifyKey&) = default;
};

SigningKey generate(const RandomSource& rng);
VerifyKey verify_key_of(const SigningKey& key);
std::array<std::uint8_t, 64> sign(const SigningKey& key, std::span<const std::uint8_t> msg);
bool verify(const VerifyKey& key, std::span<const std::uint8_t> msg,
            std::span<const std::uint8_t, 64> signature);

}  // namespace sig
}  // namespace awc
