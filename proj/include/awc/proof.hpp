// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "awc/algebra.hpp"
#include "awc/authdict.hpp"

namespace awc {

// Normalized conjunctive query: distinct terms, sorted; normalization matches
// index tokenization.
struct Query {
    std::vector<std::string> terms;

    static Query normalize(const std::vector<std::string>& raw_terms);
    std::size_t term_count() const { return terms.size(); }
};

// Evidence for one query term: either a membership proof for (term, T[term])
// or an absence proof for unknown terms.
struct TermEvidence {
    std::string term;
    bool known = false;
    MerkleProof membership;  // valid when known
    AbsenceProof absence;    // valid when !known
};

// Four-part intersection proof. part_c / part_d align with the known terms of
// part_b in order; part_d is empty when any query term is unknown (the
// absence proof alone justifies the empty answer).
struct Proof {
    Polynomial part_a;                 // coefficients of prod (x + y_i)
    std::vector<TermEvidence> part_b;  // sorted by term
    std::vector<G1Element> part_c;     // subset witnesses
    std::vector<G2Element> part_d;     // completeness witnesses
    std::uint64_t epoch = 0;
};

enum class ResponseStatus : std::uint8_t {
    Ok = 0,
    Malformed = 1,
    UnsupportedVersion = 2,
    OversizedQuery = 3,
    UnknownEpoch = 4,
    Internal = 5,
};

struct QueryResponse {
    ResponseStatus status = ResponseStatus::Ok;
    std::uint64_t epoch = 0;
    std::vector<FieldElement> answer;  // sorted doc ids
    Proof proof;                       // populated when status == Ok
};

struct QueryRequest {
    std::uint64_t epoch = 0;  // 0 = latest
    std::vector<std::string> terms;
};

}  // namespace awc
