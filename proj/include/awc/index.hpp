// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "awc/algebra.hpp"

namespace awc {

struct Document {
    std::string source_id;               // path or URL
    std::vector<std::uint8_t> content;   // canonical bytes (extracted text + links)
    FieldElement doc_id;                 // hash_to_field(content)
};

Document make_document(std::string source_id, std::vector<std::uint8_t> canonical_content);

// Extraction filter: HTML becomes visible text plus outgoing link URLs;
// plain text passes through unchanged.
std::vector<std::uint8_t> canonical_content(const std::string& source_id,
                                            std::span<const std::uint8_t> raw);

// href targets of an HTML page (crawl frontier expansion).
std::vector<std::string> extract_links(std::span<const std::uint8_t> raw);

struct IndexOptions {
    std::size_t min_document_frequency = 2;  // applied at initial build only
    const std::set<std::string>* stopwords = nullptr;  // nullptr = bundled list
};

const std::set<std::string>& default_stopwords();

// Lowercased alphanumeric tokens minus stopwords, deduplicated and sorted.
std::vector<std::string> tokenize(std::span<const std::uint8_t> content,
                                  const IndexOptions& options = {});

struct InvertedIndex {
    std::vector<std::string> dictionary;              // sorted terms
    std::vector<std::vector<FieldElement>> postings;  // aligned with dictionary
    std::map<FieldElement, std::string, FieldElementLess> registry;  // doc_id -> source

    std::size_t term_count() const { return dictionary.size(); }
    std::optional<std::size_t> term_index(const std::string& term) const;
    const std::vector<FieldElement>* posting(const std::string& term) const;
    std::size_t max_posting_size() const;
};

InvertedIndex build_inverted_index(std::span<const Document> documents,
                                   const IndexOptions& options = {});

// Direct construction from term -> sorted id list (fixtures, synthetic corpora).
InvertedIndex index_from_postings(
    std::vector<std::pair<std::string, std::vector<FieldElement>>> postings,
    std::map<FieldElement, std::string, FieldElementLess> registry);

struct UpdateBatch {
    std::vector<Document> added;
    std::vector<FieldElement> removed_ids;
};

struct TermDelta {
    std::string term;
    bool new_term = false;  // not present in the old dictionary
    std::vector<FieldElement> adds;
    std::vector<FieldElement> removes;
};

struct DiffResult {
    std::vector<TermDelta> deltas;
    std::size_t affected_terms = 0;  // t'
    std::size_t affected_docs = 0;   // n'
};

// Per-term deltas for the batch; throws on removal of an unknown doc id.
DiffResult diff(const InvertedIndex& index, const UpdateBatch& batch,
                const IndexOptions& options = {});

// Applies deltas: merges adds, drops removes, inserts new terms, and deletes
// terms whose posting lists become empty.
InvertedIndex apply_diff(const InvertedIndex& index, const UpdateBatch& batch,
                         const DiffResult& diff_result);

// Deterministic directory ingestion: regular files, sorted by relative path.
std::vector<Document> ingest_directory(const std::string& path);

struct FetchOptions {
    std::size_t max_depth = 0;   // 0 = only the listed urls
    std::size_t max_pages = 32;
    // soft-limit report: number of pages skipped once the cap was hit
    std::size_t* skipped = nullptr;
};

// Bounded same-host fetcher over a url-list file (one url per line).
std::vector<Document> ingest_url_list(const std::string& list_path, const FetchOptions& options);

}  // namespace awc
