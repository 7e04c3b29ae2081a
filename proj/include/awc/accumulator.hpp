// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "awc/pairing.hpp"

namespace awc {

// Per-term accumulation values, aligned with the index dictionary order.
struct AccumulationTable {
    std::vector<G1Element> values;
    std::uint64_t epoch = 0;
};

// g^(prod (s+x)) via the trapdoor: one scalar product and one exponentiation.
// Crawler-side only. Throws if some element equals -s.
G1Element accumulate(std::span<const FieldElement> set, const SecretKey& sk,
                     const PublicParams& pp);

// Trapdoor-free witness g^(prod_{x in superset-subset} (s+x)). Both inputs
// sorted ascending; throws when subset is not contained in superset.
G1Element subset_witness(std::span<const FieldElement> superset,
                         std::span<const FieldElement> subset, const PublicParams& pp);

// Witness from a precomputed residual polynomial (prover fast path).
G1Element subset_witness_from_poly(const Polynomial& residual_poly, const PublicParams& pp);

// F_j = g2^(q_j(s)) with sum q_j P_j = 1 over the residual-set polynomials.
// Throws GcdNotOne when the residual sets share an element.
std::vector<G2Element> completeness_witnesses(
    std::span<const std::vector<FieldElement>> residual_sets, const PublicParams& pp);

// One exponentiation by (s+x) / its inverse.
G1Element update_add(const G1Element& acc, const FieldElement& x, const SecretKey& sk);
G1Element update_remove(const G1Element& acc, const FieldElement& x, const SecretKey& sk);

}  // namespace awc
