// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/accumulator.hpp"

#include <algorithm>

#include "awc/errors.hpp"

namespace awc {

G1Element accumulate(std::span<const FieldElement> set, const SecretKey& sk,
                     const PublicParams& pp) {
    if (set.size() > pp.n)
        throw DegreeExceedsParams("accumulate: set larger than the degree bound");
    FieldElement product = FieldElement::one();
    for (const auto& x : set) {
        FieldElement factor = sk.s + x;
        if (factor.is_zero())
            throw Error("accumulate: set element equals the negated trapdoor");
        product *= factor;
    }
    return g1_mul(pp.g1(), product);
}

G1Element subset_witness(std::span<const FieldElement> superset,
                         std::span<const FieldElement> subset, const PublicParams& pp) {
    FieldElementLess less;
    if (!std::includes(superset.begin(), superset.end(), subset.begin(), subset.end(), less))
        throw Error("subset_witness: claimed subset not contained in the set");
    std::vector<FieldElement> residual;
    residual.reserve(superset.size() - subset.size());
    std::set_difference(superset.begin(), superset.end(), subset.begin(), subset.end(),
                        std::back_inserter(residual), less);
    return commit_g1(poly_from_roots(residual), pp);
}

G1Element subset_witness_from_poly(const Polynomial& residual_poly, const PublicParams& pp) {
    return commit_g1(residual_poly, pp);
}

std::vector<G2Element> completeness_witnesses(
    std::span<const std::vector<FieldElement>> residual_sets, const PublicParams& pp) {
    std::vector<Polynomial> cofactors = coprime_cofactors(residual_sets);
    std::vector<G2Element> out;
    out.reserve(cofactors.size());
    for (const auto& q : cofactors)
        out.push_back(commit_g2(q, pp));
    return out;
}

G1Element update_add(const G1Element& acc, const FieldElement& x, const SecretKey& sk) {
    FieldElement factor = sk.s + x;
    if (factor.is_zero())
        throw Error("update_add: element equals the negated trapdoor");
    return g1_mul(acc, factor);
}

G1Element update_remove(const G1Element& acc, const FieldElement& x, const SecretKey& sk) {
    FieldElement factor = sk.s + x;
    if (factor.is_zero())
        throw Error("update_remove: element equals the negated trapdoor");
    return g1_mul(acc, factor.inverse());
}

}  // namespace awc
