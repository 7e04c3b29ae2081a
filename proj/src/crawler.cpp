// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/crawler.hpp"

#include <algorithm>
#include <future>

#include "awc/errors.hpp"

namespace awc {

namespace {

std::uint64_t next_pow2(std::uint64_t x) {
    std::uint64_t out = 1;
    while (out < x)
        out <<= 1;
    return out;
}

std::vector<G1Element> accumulate_all(const InvertedIndex& index, const SecretKey& sk,
                                      const PublicParams& pp) {
    std::vector<G1Element> values(index.postings.size());
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> tasks;
    const std::size_t chunk = (values.size() + hw - 1) / hw;
    for (std::size_t lo = 0; lo < values.size(); lo += chunk) {
        std::size_t hi = std::min(values.size(), lo + chunk);
        tasks.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                values[i] = accumulate(index.postings[i], sk, pp);
        }));
    }
    for (auto& t : tasks)
        t.get();
    return values;
}

MerkleTree tree_for(const InvertedIndex& index, const std::vector<G1Element>& values) {
    std::vector<MerkleLeaf> leaves;
    leaves.reserve(index.dictionary.size());
    for (std::size_t i = 0; i < index.dictionary.size(); ++i)
        leaves.push_back({index.dictionary[i], values[i]});
    return MerkleTree::build(std::move(leaves));
}

}  // namespace

Bundle bundle_from_index(InvertedIndex index, std::uint64_t epoch, const SecretKey& sk,
                         const PublicParams& pp) {
    Bundle bundle;
    bundle.table.values = accumulate_all(index, sk, pp);
    bundle.table.epoch = epoch;
    bundle.tree = tree_for(index, bundle.table.values);
    bundle.index = std::move(index);
    bundle.epoch = epoch;
    return bundle;
}

SetupResult setup_from_index(InvertedIndex index, const CrawlerOptions& options,
                             const RandomSource& rng) {
    if (index.dictionary.empty())
        throw Error("setup: corpus empty after filtering");
    const std::uint64_t m = index.term_count();
    const std::uint64_t max_list = index.max_posting_size();
    const std::uint64_t required = std::max(m, max_list);
    std::uint64_t n = next_pow2(2 * required);
    if (options.n_override) {
        if (*options.n_override < required)
            throw Error("setup: n override below max(m, max posting size)");
        n = *options.n_override;
    }

    SetupResult out;
    KeyMaterial km = keygen(n, rng);
    out.sk = std::move(km.sk);
    out.pp = std::move(km.pp);
    out.bundle = bundle_from_index(std::move(index), 0, out.sk, out.pp);
    out.digest = sign_digest(out.bundle.tree.root(), 0, out.pp.fingerprint, out.sk.signing_key);
    return out;
}

SetupResult setup(std::span<const Document> corpus, const CrawlerOptions& options,
                  const RandomSource& rng) {
    return setup_from_index(build_inverted_index(corpus, options.index), options, rng);
}

UpdateResult apply_update(Bundle& bundle, const UpdateBatch& batch, const SecretKey& sk,
                          const PublicParams& pp, const IndexOptions& options) {
    UpdateResult out;
    out.diff = diff(bundle.index, batch, options);

    InvertedIndex next = apply_diff(bundle.index, batch, out.diff);
    if (next.max_posting_size() > pp.n)
        throw DegreeExceedsParams(
            "apply_update: a posting list now exceeds the degree bound; re-keying required");

    bool dictionary_changed = next.dictionary.size() != bundle.index.dictionary.size();

    // carry over / adjust accumulation values term by term
    std::vector<G1Element> values(next.dictionary.size());
    std::size_t old_i = 0;
    for (std::size_t new_i = 0; new_i < next.dictionary.size(); ++new_i) {
        const std::string& term = next.dictionary[new_i];
        while (old_i < bundle.index.dictionary.size() && bundle.index.dictionary[old_i] < term)
            ++old_i;
        if (old_i < bundle.index.dictionary.size() && bundle.index.dictionary[old_i] == term) {
            values[new_i] = bundle.table.values[old_i];
        } else {
            values[new_i] = accumulate(next.postings[new_i], sk, pp);  // new term
            dictionary_changed = true;
            continue;
        }
    }

    std::vector<std::string> touched_existing;
    for (const auto& delta : out.diff.deltas) {
        auto idx = next.term_index(delta.term);
        if (!idx) {
            dictionary_changed = true;  // term removed entirely
            continue;
        }
        if (delta.new_term)
            continue;  // freshly accumulated above
        G1Element acc = values[*idx];
        for (const auto& id : delta.removes)
            acc = update_remove(acc, id, sk);
        for (const auto& id : delta.adds)
            acc = update_add(acc, id, sk);
        values[*idx] = acc;
        touched_existing.push_back(delta.term);
    }

    bundle.index = std::move(next);
    bundle.table.values = std::move(values);
    bundle.epoch += 1;
    bundle.table.epoch = bundle.epoch;

    if (dictionary_changed) {
        bundle.tree = tree_for(bundle.index, bundle.table.values);
    } else {
        for (const auto& term : touched_existing) {
            auto idx = bundle.index.term_index(term);
            bundle.tree.update_leaf(term, bundle.table.values[*idx]);
        }
    }

    out.digest =
        sign_digest(bundle.tree.root(), bundle.epoch, pp.fingerprint, sk.signing_key);
    return out;
}

}  // namespace awc
