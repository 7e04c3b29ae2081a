// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "awc/protocol.hpp"

namespace awc {

struct FreshnessPolicy {
    // minimum acceptable digest epoch; 0 accepts any validly signed epoch
    std::uint64_t min_epoch = 0;
};

struct Verdict {
    enum class Failure {
        None,
        Malformed,
        DigestSignature,   // B-digest
        EpochStale,
        Coefficients,      // A
        MerklePath,        // B-merkle
        Subset,            // C, failing_term identifies j
        Completeness,      // D
    };

    bool accepted = false;
    Failure failure = Failure::None;
    int failing_term = -1;
    std::string detail;

    static Verdict accept() { return {true, Failure::None, -1, {}}; }
    static Verdict reject(Failure f, std::string detail_text, int term = -1) {
        return {false, f, term, std::move(detail_text)};
    }
};

const char* failure_name(Verdict::Failure failure);

// Individual checks, exposed for targeted tests. verify() runs them in order
// with short-circuit: digest signature, epoch policy, structure, A, B, C, D.
bool verify_coefficients(const Polynomial& part_a, std::span<const FieldElement> answer,
                         const FieldElement& kappa);
bool verify_accumulations(const Proof& proof, const Query& query, const Hash32& root);
int first_failing_subset_term(const Proof& proof, const PublicParams& pp);  // -1 = all pass
bool verify_completeness(const Proof& proof, const PublicParams& pp);

Verdict verify(const Query& query, const QueryResponse& response, const Digest& digest,
               const PublicParams& pp, const FreshnessPolicy& policy, const RandomSource& rng);

}  // namespace awc
