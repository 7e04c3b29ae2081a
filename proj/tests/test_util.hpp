// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "awc/algebra.hpp"

namespace awc::testing {

// Uniform field element; rejection-samples full-width limbs.
inline FieldElement random_field(std::mt19937_64& rng) {
    for (;;) {
        std::array<std::uint8_t, 32> bytes;
        for (std::size_t i = 0; i < 32; i += 8) {
            std::uint64_t word = rng();
            for (int j = 0; j < 8; ++j)
                bytes[i + static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(word >> (8 * j));
        }
        bytes[0] &= 0x3f;
        FieldElement out;
        if (FieldElement::from_bytes(std::span<const std::uint8_t, 32>(bytes), out))
            return out;
    }
}

inline FieldElement random_nonzero(std::mt19937_64& rng) {
    for (;;) {
        FieldElement x = random_field(rng);
        if (!x.is_zero())
            return x;
    }
}

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t max_degree) {
    std::uniform_int_distribution<std::size_t> degree_dist(0, max_degree);
    Polynomial p(degree_dist(rng) + 1);
    for (auto& c : p)
        c = random_field(rng);
    return poly_trim(std::move(p));
}

inline Polynomial random_nonzero_poly(std::mt19937_64& rng, std::size_t max_degree) {
    for (;;) {
        Polynomial p = random_poly(rng, max_degree);
        if (!poly_is_zero(p))
            return p;
    }
}

}  // namespace awc::testing
