// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/bench.hpp"

#include <fstream>

#include "awc/prover.hpp"
#include "doctest.h"

using namespace awc;

namespace {

std::size_t exact_intersection(const InvertedIndex& index, const Query& query) {
    Bundle bundle;
    bundle.index = index;
    return answer(bundle, query).size();
}

}  // namespace

TEST_CASE("generated corpora realize planted intersections exactly") {
    bench::SyntheticSpec spec;
    spec.seed = 5;
    spec.queries = {
        {"planted", {200, 200}, 10},
        {"full", {50, 50}, 50},     // delta equal to the list length
        {"disjoint", {40, 60}, 0},  // no overlap at all
        {"triple", {30, 40, 50}, 7},
    };
    bench::SyntheticCorpus corpus = bench::generate(spec);

    CHECK(exact_intersection(corpus.index, corpus.queries[0]) == 10);
    CHECK(exact_intersection(corpus.index, corpus.queries[1]) == 50);
    // identical lists when delta equals the length
    CHECK(*corpus.index.posting("q1t0") == *corpus.index.posting("q1t1"));
    CHECK(exact_intersection(corpus.index, corpus.queries[2]) == 0);
    CHECK(exact_intersection(corpus.index, corpus.queries[3]) == 7);

    for (std::size_t q = 0; q < spec.queries.size(); ++q)
        for (std::size_t j = 0; j < spec.queries[q].list_sizes.size(); ++j)
            CHECK(corpus.index.posting(corpus.queries[q].terms[j]) != nullptr);

    // content columns are deterministic for a fixed seed
    bench::SyntheticCorpus again = bench::generate(spec);
    CHECK(again.index.dictionary == corpus.index.dictionary);
    CHECK(again.index.postings == corpus.index.postings);
}

TEST_CASE("oversized planted intersection is rejected") {
    bench::SyntheticSpec spec;
    spec.queries = {{"bad", {10, 10}, 11}};
    CHECK_THROWS(bench::generate(spec));
}

TEST_CASE("small suite produces rows with the pinned header") {
    bench::SyntheticSpec spec;
    spec.seed = 6;
    spec.queries = {{"tiny", {64, 64}, 8}};
    spec.updates.dictionary_terms = 8;
    spec.updates.posting_size = 3;
    spec.updates.t_primes = {4};
    bench::SuiteOptions options;
    options.repetitions = 1;
    bench::SuiteResult result = bench::run_suite(spec, options);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].t == 2);
    CHECK(result.rows[0].total_set_size == 128);
    CHECK(result.rows[0].intersection == 8);
    CHECK(result.rows[0].proof_bytes > 0);
    REQUIRE(result.update_rows.size() == 1);
    CHECK(result.update_rows[0].t_prime == 4);

    std::string path = "/tmp/awc_test_bench.csv";
    bench::write_query_csv(path, result.rows);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "query_id,t,N,delta,prove_ms,verify_merkle_ms,verify_pairing_ms,proof_bytes");
}
