// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "awc/crawler.hpp"
#include "awc/prover.hpp"
#include "awc/verifier.hpp"

namespace awc::bench {

struct QuerySpec {
    std::string name;
    std::vector<std::size_t> list_sizes;  // posting size per query term
    std::size_t intersection = 0;         // planted answer size
};

struct UpdateSpec {
    std::size_t dictionary_terms = 0;  // extra terms available for updates
    std::size_t posting_size = 4;
    std::vector<std::size_t> t_primes;  // batch sizes to measure
};

struct SyntheticSpec {
    std::uint64_t seed = 1;
    std::vector<QuerySpec> queries;
    UpdateSpec updates;
};

struct SyntheticCorpus {
    InvertedIndex index;
    std::vector<Query> queries;  // aligned with spec.queries
};

// Deterministic for a fixed seed; planted intersection sizes are exact.
SyntheticCorpus generate(const SyntheticSpec& spec);

struct MeasurementRow {
    std::string query_id;
    std::size_t t = 0;
    std::size_t total_set_size = 0;  // N
    std::size_t intersection = 0;    // delta
    double prove_ms = 0;
    double verify_merkle_ms = 0;
    double verify_pairing_ms = 0;
    std::size_t proof_bytes = 0;     // response minus answer payload
    std::size_t response_bytes = 0;
};

struct UpdateRow {
    std::string batch_id;
    std::size_t t_prime = 0;
    std::size_t n_prime = 0;
    double add_ms = 0;
    double remove_ms = 0;
};

struct SuiteResult {
    std::vector<MeasurementRow> rows;
    std::vector<UpdateRow> update_rows;
};

struct SuiteOptions {
    int repetitions = 5;  // wall-clock medians over this many runs
    bool verbose = false;
};

// One setup over the whole synthetic corpus, then per-query measurements and
// per-batch update timings.
SuiteResult run_suite(const SyntheticSpec& spec, const SuiteOptions& options);

// query_id,t,N,delta,prove_ms,verify_merkle_ms,verify_pairing_ms,proof_bytes
void write_query_csv(const std::string& path, const std::vector<MeasurementRow>& rows);
// batch_id,t_prime,n_prime,add_ms,remove_ms
void write_update_csv(const std::string& path, const std::vector<UpdateRow>& rows);

double median(std::vector<double> xs);

}  // namespace awc::bench
