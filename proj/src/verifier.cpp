// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/verifier.hpp"

#include <algorithm>

#include "awc/errors.hpp"

namespace awc {

namespace {

std::vector<const TermEvidence*> known_terms(const Proof& proof) {
    std::vector<const TermEvidence*> out;
    for (const auto& ev : proof.part_b)
        if (ev.known)
            out.push_back(&ev);
    return out;
}

}  // namespace

const char* failure_name(Verdict::Failure failure) {
    switch (failure) {
        case Verdict::Failure::None: return "none";
        case Verdict::Failure::Malformed: return "malformed";
        case Verdict::Failure::DigestSignature: return "B-digest";
        case Verdict::Failure::EpochStale: return "epoch-stale";
        case Verdict::Failure::Coefficients: return "A-coefficients";
        case Verdict::Failure::MerklePath: return "B-merkle";
        case Verdict::Failure::Subset: return "C-subset";
        case Verdict::Failure::Completeness: return "D-completeness";
    }
    return "unknown";
}

bool verify_coefficients(const Polynomial& part_a, std::span<const FieldElement> answer,
                         const FieldElement& kappa) {
    FieldElement lhs = poly_eval(part_a, kappa);
    FieldElement rhs = FieldElement::one();
    for (const auto& y : answer)
        rhs *= kappa + y;
    return lhs == rhs;
}

bool verify_accumulations(const Proof& proof, const Query& query, const Hash32& root) {
    if (proof.part_b.size() != query.terms.size())
        return false;
    for (std::size_t i = 0; i < proof.part_b.size(); ++i) {
        const TermEvidence& ev = proof.part_b[i];
        if (ev.term != query.terms[i])
            return false;
        if (ev.known) {
            if (ev.membership.term != ev.term || !verify_path(ev.membership, root))
                return false;
        } else {
            if (!verify_absence(ev.absence, ev.term, root))
                return false;
        }
    }
    return true;
}

int first_failing_subset_term(const Proof& proof, const PublicParams& pp) {
    G2Element commitment = commit_g2(proof.part_a, pp);
    auto known = known_terms(proof);
    for (std::size_t j = 0; j < known.size(); ++j) {
        G1Element neg_acc = known[j]->membership.acc;
        if (!neg_acc.infinity)
            neg_acc.y = -neg_acc.y;
        std::pair<G1Element, G2Element> pairs[2] = {{proof.part_c[j], commitment},
                                                    {neg_acc, pp.g2()}};
        if (!multi_pair(pairs).is_one())
            return static_cast<int>(j);
    }
    return -1;
}

bool verify_completeness(const Proof& proof, const PublicParams& pp) {
    std::vector<std::pair<G1Element, G2Element>> pairs;
    pairs.reserve(proof.part_c.size());
    for (std::size_t j = 0; j < proof.part_c.size(); ++j)
        pairs.emplace_back(proof.part_c[j], proof.part_d[j]);
    return multi_pair(pairs) == generator_pairing(pp);
}

Verdict verify(const Query& query, const QueryResponse& response, const Digest& digest,
               const PublicParams& pp, const FreshnessPolicy& policy, const RandomSource& rng) {
    // trust anchor first: digest signature and params binding
    if (digest.params_fingerprint != pp.fingerprint)
        return Verdict::reject(Verdict::Failure::DigestSignature,
                               "digest bound to different public parameters");
    if (!verify_digest(digest, pp.verify_key))
        return Verdict::reject(Verdict::Failure::DigestSignature, "digest signature invalid");

    if (digest.epoch < policy.min_epoch)
        return Verdict::reject(Verdict::Failure::EpochStale, "digest older than required epoch");
    if (response.epoch != digest.epoch)
        return Verdict::reject(Verdict::Failure::EpochStale,
                               "response epoch does not match the digest");

    // structural validation
    if (response.status != ResponseStatus::Ok)
        return Verdict::reject(Verdict::Failure::Malformed, "server reported an error status");
    const Proof& proof = response.proof;
    if (query.terms.empty())
        return Verdict::reject(Verdict::Failure::Malformed, "empty query");
    if (proof.part_b.size() != query.terms.size())
        return Verdict::reject(Verdict::Failure::Malformed, "per-term evidence count mismatch");
    if (proof.part_a.size() != response.answer.size() + 1)
        return Verdict::reject(Verdict::Failure::Malformed,
                               "coefficient count does not match the answer size");
    if (proof.part_a.size() > 1 && proof.part_a.back().is_zero())
        return Verdict::reject(Verdict::Failure::Malformed, "non-canonical polynomial");
    FieldElementLess less;
    for (std::size_t i = 1; i < response.answer.size(); ++i)
        if (!less(response.answer[i - 1], response.answer[i]))
            return Verdict::reject(Verdict::Failure::Malformed, "answer not strictly sorted");
    std::size_t known_count = 0;
    for (const auto& ev : proof.part_b)
        known_count += ev.known ? 1 : 0;
    const bool all_known = known_count == query.terms.size();
    if (!all_known && !response.answer.empty())
        return Verdict::reject(Verdict::Failure::Malformed,
                               "non-empty answer with unknown query terms");
    if (proof.part_c.size() != known_count)
        return Verdict::reject(Verdict::Failure::Malformed, "subset witness count mismatch");
    if (proof.part_d.size() != (all_known ? known_count : 0))
        return Verdict::reject(Verdict::Failure::Malformed, "completeness witness count mismatch");

    // A: coefficient spot-check at a fresh random point
    FieldElement kappa = random_nonzero_field_element(rng);
    if (!verify_coefficients(proof.part_a, response.answer, kappa))
        return Verdict::reject(Verdict::Failure::Coefficients, "intersection polynomial mismatch");

    // B: every accumulation value (or absence) chains to the signed root
    if (!verify_accumulations(proof, query, digest.root))
        return Verdict::reject(Verdict::Failure::MerklePath, "authentication path rejected");

    // C, D: pairing checks
    try {
        int failing = first_failing_subset_term(proof, pp);
        if (failing >= 0)
            return Verdict::reject(Verdict::Failure::Subset, "subset condition failed", failing);
        if (all_known && !verify_completeness(proof, pp))
            return Verdict::reject(Verdict::Failure::Completeness, "completeness condition failed");
    } catch (const DegreeExceedsParams&) {
        return Verdict::reject(Verdict::Failure::Malformed,
                               "proof degree exceeds available public parameters");
    }
    return Verdict::accept();
}

}  // namespace awc
