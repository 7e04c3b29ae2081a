// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>

#include "awc/errors.hpp"

namespace awc::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

RandomSource seeded_source(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](std::span<std::uint8_t> out) {
        for (auto& b : out)
            b = static_cast<std::uint8_t>((*rng)());
    };
}

}  // namespace

double median(std::vector<double> xs) {
    if (xs.empty())
        return 0;
    std::sort(xs.begin(), xs.end());
    std::size_t mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

SyntheticCorpus generate(const SyntheticSpec& spec) {
    SyntheticCorpus out;
    std::vector<std::pair<std::string, std::vector<FieldElement>>> postings;
    std::map<FieldElement, std::string, FieldElementLess> registry;
    std::uint64_t next_id = 1;
    auto fresh_id = [&] {
        FieldElement id = FieldElement::from_u64(next_id);
        registry.emplace(id, "synthetic-" + std::to_string(next_id));
        ++next_id;
        return id;
    };

    for (std::size_t q = 0; q < spec.queries.size(); ++q) {
        const QuerySpec& qs = spec.queries[q];
        for (std::size_t len : qs.list_sizes)
            if (qs.intersection > len)
                throw Error("bench: planted intersection larger than a posting list");
        std::vector<FieldElement> shared;
        shared.reserve(qs.intersection);
        for (std::size_t i = 0; i < qs.intersection; ++i)
            shared.push_back(fresh_id());
        std::vector<std::string> terms;
        for (std::size_t j = 0; j < qs.list_sizes.size(); ++j) {
            std::vector<FieldElement> ids = shared;
            for (std::size_t i = qs.intersection; i < qs.list_sizes[j]; ++i)
                ids.push_back(fresh_id());
            std::string term = "q" + std::to_string(q) + "t" + std::to_string(j);
            postings.emplace_back(term, std::move(ids));
            terms.push_back(term);
        }
        Query query;
        std::sort(terms.begin(), terms.end());
        query.terms = std::move(terms);
        out.queries.push_back(std::move(query));
    }

    // extra terms for update batches; every posting gets its own documents so
    // removals never empty a list
    for (std::size_t u = 0; u < spec.updates.dictionary_terms; ++u) {
        std::vector<FieldElement> ids;
        for (std::size_t i = 0; i < std::max<std::size_t>(2, spec.updates.posting_size); ++i)
            ids.push_back(fresh_id());
        postings.emplace_back("u" + std::to_string(u), std::move(ids));
    }

    out.index = index_from_postings(std::move(postings), std::move(registry));
    return out;
}

SuiteResult run_suite(const SyntheticSpec& spec, const SuiteOptions& options) {
    SyntheticCorpus corpus = generate(spec);
    SetupResult setup_result = setup_from_index(corpus.index, {}, seeded_source(spec.seed));
    const Bundle& bundle = setup_result.bundle;
    const PublicParams& pp = setup_result.pp;
    RandomSource verify_rng = seeded_source(spec.seed ^ 0x5eedULL);

    SuiteResult out;
    for (std::size_t q = 0; q < corpus.queries.size(); ++q) {
        const Query& query = corpus.queries[q];
        MeasurementRow row;
        row.query_id = spec.queries[q].name.empty() ? "q" + std::to_string(q) : spec.queries[q].name;
        row.t = query.terms.size();
        for (const auto& term : query.terms)
            row.total_set_size += bundle.index.posting(term)->size();

        std::vector<double> prove_times, merkle_times, pairing_times;
        QueryResponse response;
        for (int rep = 0; rep < options.repetitions; ++rep) {
            auto t0 = Clock::now();
            auto intersection = answer(bundle, query);
            Proof proof = prove(bundle, pp, query, intersection);
            prove_times.push_back(ms_since(t0));
            response = QueryResponse{ResponseStatus::Ok, bundle.epoch, std::move(intersection),
                                     std::move(proof)};

            // split verification: digest + hash paths, then field/pairing work
            t0 = Clock::now();
            bool digest_ok = verify_digest(setup_result.digest, pp.verify_key);
            bool paths_ok = verify_accumulations(response.proof, query, setup_result.digest.root);
            merkle_times.push_back(ms_since(t0));
            if (!digest_ok || !paths_ok)
                throw Error("bench: honest proof failed the hash checks");

            t0 = Clock::now();
            FieldElement kappa = random_nonzero_field_element(verify_rng);
            bool coeff_ok = verify_coefficients(response.proof.part_a, response.answer, kappa);
            bool subset_ok = first_failing_subset_term(response.proof, pp) < 0;
            bool complete_ok = verify_completeness(response.proof, pp);
            pairing_times.push_back(ms_since(t0));
            if (!coeff_ok || !subset_ok || !complete_ok)
                throw Error("bench: honest proof failed the algebraic checks");
        }
        row.intersection = response.answer.size();
        row.prove_ms = median(prove_times);
        row.verify_merkle_ms = median(merkle_times);
        row.verify_pairing_ms = median(pairing_times);
        row.response_bytes = encode_response(response).size();
        row.proof_bytes = row.response_bytes - 32 * response.answer.size();
        out.rows.push_back(row);
        if (options.verbose)
            std::fprintf(stderr, "bench %s: prove %.1f ms verify %.2f+%.2f ms proof %zu B\n",
                         row.query_id.c_str(), row.prove_ms, row.verify_merkle_ms,
                         row.verify_pairing_ms, row.proof_bytes);
    }

    // update batches: one synthetic document touching exactly t' update terms
    for (std::size_t t_prime : spec.updates.t_primes) {
        if (t_prime > spec.updates.dictionary_terms)
            throw Error("bench: t' exceeds the update dictionary");
        std::string body;
        for (std::size_t u = 0; u < t_prime; ++u)
            body += "u" + std::to_string(u) + " ";
        Document doc = make_document("update-doc-" + std::to_string(t_prime),
                                     std::vector<std::uint8_t>(body.begin(), body.end()));
        IndexOptions opts;
        opts.min_document_frequency = 1;

        UpdateRow row;
        row.batch_id = "t" + std::to_string(t_prime);
        row.t_prime = t_prime;
        row.n_prime = 1;
        std::vector<double> add_times, remove_times;
        for (int rep = 0; rep < options.repetitions; ++rep) {
            Bundle working = setup_result.bundle;
            UpdateBatch add_batch;
            add_batch.added.push_back(doc);
            auto t0 = Clock::now();
            apply_update(working, add_batch, setup_result.sk, pp, opts);
            add_times.push_back(ms_since(t0));

            UpdateBatch remove_batch;
            remove_batch.removed_ids.push_back(doc.doc_id);
            t0 = Clock::now();
            apply_update(working, remove_batch, setup_result.sk, pp, opts);
            remove_times.push_back(ms_since(t0));
        }
        row.add_ms = median(add_times);
        row.remove_ms = median(remove_times);
        out.update_rows.push_back(row);
        if (options.verbose)
            std::fprintf(stderr, "bench update t'=%zu: add %.2f ms remove %.2f ms\n", t_prime,
                         row.add_ms, row.remove_ms);
    }
    return out;
}

void write_query_csv(const std::string& path, const std::vector<MeasurementRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("bench: cannot write " + path);
    out << "query_id,t,N,delta,prove_ms,verify_merkle_ms,verify_pairing_ms,proof_bytes\n";
    for (const auto& r : rows) {
        out << r.query_id << ',' << r.t << ',' << r.total_set_size << ',' << r.intersection << ','
            << r.prove_ms << ',' << r.verify_merkle_ms << ',' << r.verify_pairing_ms << ','
            << r.proof_bytes << '\n';
    }
}

void write_update_csv(const std::string& path, const std::vector<UpdateRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("bench: cannot write " + path);
    out << "batch_id,t_prime,n_prime,add_ms,remove_ms\n";
    for (const auto& r : rows)
        out << r.batch_id << ',' << r.t_prime << ',' << r.n_prime << ',' << r.add_ms << ','
            << r.remove_ms << '\n';
}

}  // namespace awc::bench
