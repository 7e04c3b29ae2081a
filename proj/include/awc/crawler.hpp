// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "awc/protocol.hpp"

namespace awc {

struct CrawlerOptions {
    // degree bound override; must cover max(m, max posting size)
    std::optional<std::uint64_t> n_override;
    IndexOptions index;
};

struct SetupResult {
    SecretKey sk;  // stays with the crawler; callers persist it via the keystore
    PublicParams pp;
    Bundle bundle;
    Digest digest;
};

// Full preprocessing: index, keys, accumulation table, tree, signed digest.
// Default degree bound is 2*max(m, max|S_i|) rounded up to a power of two.
SetupResult setup(std::span<const Document> corpus, const CrawlerOptions& options,
                  const RandomSource& rng);

// Same, over an already-built index (fixtures and synthetic corpora).
SetupResult setup_from_index(InvertedIndex index, const CrawlerOptions& options,
                             const RandomSource& rng);

// Rebuilds table and tree for an index under an existing key (update oracle,
// re-publication).
Bundle bundle_from_index(InvertedIndex index, std::uint64_t epoch, const SecretKey& sk,
                         const PublicParams& pp);

struct UpdateResult {
    DiffResult diff;
    Digest digest;
};

// Applies the batch in place: per-term accumulator updates and Merkle path
// rewrites for existing terms, a tree rebuild when the dictionary changes,
// epoch incremented by one (an empty batch is a freshness heartbeat). Throws
// when a posting list would exceed the degree bound.
UpdateResult apply_update(Bundle& bundle, const UpdateBatch& batch, const SecretKey& sk,
                          const PublicParams& pp, const IndexOptions& options = {});

}  // namespace awc
