// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "awc/algebra.hpp"
#include "awc/detail/curve.hpp"
#include "awc/detail/pairing_core.hpp"
#include "awc/signature.hpp"

namespace awc {

using G1Element = detail::G1Affine;
using G2Element = detail::G2Affine;
using TargetElement = detail::Fq12;

// Trapdoor plus digest-signing key. Never serialized into server- or
// client-visible artifacts; the keystore file is the only sink.
struct SecretKey {
    FieldElement s;
    sig::SigningKey signing_key;
};

struct PublicParams {
    std::uint64_t n = 0;               // degree bound of the full ladder
    std::vector<G1Element> powers_g1;  // g^(s^0..s^k1), k1 <= n when truncated
    std::vector<G2Element> powers_g2;
    sig::VerifyKey verify_key;
    // SHA-256 over the full ladder, fixed at keygen and preserved by truncation.
    std::array<std::uint8_t, 32> fingerprint{};

    const G1Element& g1() const { return powers_g1.front(); }
    const G2Element& g2() const { return powers_g2.front(); }
    std::size_t max_g1_degree() const { return powers_g1.size() - 1; }
    std::size_t max_g2_degree() const { return powers_g2.size() - 1; }
};

struct KeyMaterial {
    SecretKey sk;
    PublicParams pp;
};

// Builds both power ladders iteratively from a fresh trapdoor; n >= 1.
KeyMaterial keygen(std::uint64_t n, const RandomSource& rng);

// Multi-scalar product: g^{poly(s)} without the trapdoor.
G1Element commit_g1(const Polynomial& poly, const PublicParams& pp);
G2Element commit_g2(const Polynomial& poly, const PublicParams& pp);

TargetElement pair(const G1Element& a, const G2Element& b);
// prod_i e(pairs[i].first, pairs[i].second) with one shared final exponentiation
TargetElement multi_pair(std::span<const std::pair<G1Element, G2Element>> pairs);
TargetElement gt_identity();

// e(g, g2); cached internally per fingerprint.
TargetElement generator_pairing(const PublicParams& pp);

// Client-side distribution: keeps only the first max_degree+1 powers.
PublicParams truncate_params(const PublicParams& pp, std::size_t max_degree);

// Spot-check cross-ladder consistency e(g^(s^k), g2) == e(g, g2^(s^k)).
bool validate_params(const PublicParams& pp, std::span<const std::size_t> samples);

FieldElement random_field_element(const RandomSource& rng);
FieldElement random_nonzero_field_element(const RandomSource& rng);

G1Element g1_mul(const G1Element& p, const FieldElement& k);
G2Element g2_mul(const G2Element& p, const FieldElement& k);
G1Element g1_add(const G1Element& a, const G1Element& b);
G2Element g2_add(const G2Element& a, const G2Element& b);

}  // namespace awc
