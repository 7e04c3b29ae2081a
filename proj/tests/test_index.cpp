// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/index.hpp"

#include <filesystem>
#include <random>

#include "awc/errors.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace awc;
namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) {
    return {s.begin(), s.end()};
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("awc_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("tokenize folds case and deduplicates") {
    auto terms = tokenize(bytes("Hard disk DISK."));
    CHECK(terms == std::vector<std::string>{"disk", "hard"});

    CHECK(tokenize(bytes("the of and a")).empty());
    CHECK(tokenize(bytes("")).empty());
    CHECK(tokenize(bytes("x86 and RAM!")) == std::vector<std::string>{"ram", "x86"});
}

TEST_CASE("html canonicalization strips markup and keeps links") {
    std::string html =
        "<!DOCTYPE html><html><head><style>p{color:red}</style>"
        "<script>var x = \"port\";</script></head>"
        "<body><p>Hard&nbsp;disk</p><a href=\"/memory.html\">MEMORY</a></body></html>";
    auto canon = canonical_content("page.html", bytes(html));
    std::string text(canon.begin(), canon.end());
    CHECK(text.find("Hard disk") != std::string::npos);
    CHECK(text.find("MEMORY") != std::string::npos);
    CHECK(text.find("/memory.html") != std::string::npos);   // link retained
    CHECK(text.find("color") == std::string::npos);          // style dropped
    CHECK(text.find("var x") == std::string::npos);          // script dropped
    CHECK(text.find("<") == std::string::npos);

    // plain text passes through untouched
    auto plain = canonical_content("doc.txt", bytes("hello <b>world</b>"));
    CHECK(std::string(plain.begin(), plain.end()) == "hello <b>world</b>");

    auto links = extract_links(bytes(html));
    REQUIRE(links.size() == 1);
    CHECK(links[0] == "/memory.html");
}

TEST_CASE("toy corpus reproduces the eight-term dictionary") {
    fs::path dir = fresh_dir("toy");
    testing::write_toy_corpus(dir);
    auto docs = ingest_directory(dir.string());
    CHECK(docs.size() == 9);

    InvertedIndex index = build_inverted_index(docs);
    REQUIRE(index.dictionary.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(index.dictionary[i] == testing::Toy::kTerms[i]);

    // postings match the table through the source registry
    std::map<std::string, FieldElement> id_of;
    for (const auto& doc : docs)
        id_of[doc.source_id] = doc.doc_id;
    for (const auto& [term, doc_nums] : testing::Toy::postings()) {
        const auto* posting = index.posting(term);
        REQUIRE(posting != nullptr);
        REQUIRE(posting->size() == doc_nums.size());
        for (int num : doc_nums) {
            FieldElement id = id_of["doc" + std::to_string(num) + ".txt"];
            CHECK(std::binary_search(posting->begin(), posting->end(), id, FieldElementLess{}));
        }
    }

    // determinism across re-ingestion
    auto docs2 = ingest_directory(dir.string());
    for (std::size_t i = 0; i < docs.size(); ++i)
        CHECK(docs[i].doc_id == docs2[i].doc_id);
}

TEST_CASE("empty directory ingests to an empty corpus") {
    fs::path dir = fresh_dir("empty");
    CHECK(ingest_directory(dir.string()).empty());
    CHECK_THROWS_AS(ingest_directory((dir / "missing").string()), IoError);
}

TEST_CASE("min document frequency pruning") {
    std::vector<Document> docs;
    docs.push_back(make_document("a", bytes("shared unique1")));
    docs.push_back(make_document("b", bytes("shared unique2")));
    InvertedIndex pruned = build_inverted_index(docs);
    CHECK(pruned.dictionary == std::vector<std::string>{"shared"});

    IndexOptions keep_all;
    keep_all.min_document_frequency = 1;
    InvertedIndex full = build_inverted_index(docs, keep_all);
    CHECK(full.dictionary == std::vector<std::string>{"shared", "unique1", "unique2"});
}

TEST_CASE("single document index") {
    std::vector<Document> docs;
    docs.push_back(make_document("a", bytes("alpha beta")));
    IndexOptions opts;
    opts.min_document_frequency = 1;
    InvertedIndex index = build_inverted_index(docs, opts);
    CHECK(index.dictionary.size() == 2);
    for (const auto& posting : index.postings)
        CHECK(posting.size() == 1);
}

TEST_CASE("diff reports exactly the affected terms") {
    InvertedIndex index = testing::toy_index();
    IndexOptions opts;
    opts.min_document_frequency = 1;

    UpdateBatch batch;
    batch.added.push_back(make_document("new1", bytes("ram port")));
    DiffResult d = diff(index, batch, opts);
    CHECK(d.affected_terms == 2);
    CHECK(d.affected_docs == 1);
    for (const auto& delta : d.deltas) {
        CHECK((delta.term == "ram" || delta.term == "port"));
        CHECK_FALSE(delta.new_term);
        CHECK(delta.adds.size() == 1);
        CHECK(delta.removes.empty());
    }

    UpdateBatch empty;
    DiffResult d2 = diff(index, empty, opts);
    CHECK(d2.deltas.empty());
    CHECK(d2.affected_terms == 0);

    UpdateBatch bad;
    bad.removed_ids.push_back(FieldElement::from_u64(4242));
    CHECK_THROWS_AS(diff(index, bad, opts), Error);
}

TEST_CASE("apply_diff matches a rebuilt index on random corpora") {
    std::mt19937_64 rng(11);
    IndexOptions opts;
    opts.min_document_frequency = 1;
    const char* vocab[] = {"ant", "bee", "cat", "dog", "elk", "fox", "gnu", "hen"};

    for (int iter = 0; iter < 12; ++iter) {
        // random corpus of up to 64 docs
        std::vector<Document> docs;
        std::size_t doc_count = 4 + rng() % 60;
        for (std::size_t i = 0; i < doc_count; ++i) {
            std::string body;
            for (const char* w : vocab)
                if (rng() % 2)
                    body += std::string(w) + " ";
            body += "doc" + std::to_string(i);  // unique content
            docs.push_back(make_document("d" + std::to_string(i), bytes(body)));
        }
        InvertedIndex index = build_inverted_index(docs, opts);

        // random batch: remove a few, add a few (possibly with new terms)
        UpdateBatch batch;
        std::vector<Document> survivors;
        for (const auto& doc : docs) {
            if (rng() % 5 == 0)
                batch.removed_ids.push_back(doc.doc_id);
            else
                survivors.push_back(doc);
        }
        for (int a = 0; a < 3; ++a) {
            std::string body = std::string(vocab[rng() % 8]) + " zebra" + std::to_string(rng() % 2) +
                               " new" + std::to_string(iter) + std::to_string(a);
            Document doc = make_document("add" + std::to_string(a), bytes(body));
            batch.added.push_back(doc);
            survivors.push_back(doc);
        }

        DiffResult d = diff(index, batch, opts);
        InvertedIndex updated = apply_diff(index, batch, d);
        InvertedIndex rebuilt = build_inverted_index(survivors, opts);

        CHECK(updated.dictionary == rebuilt.dictionary);
        REQUIRE(updated.postings.size() == rebuilt.postings.size());
        for (std::size_t t = 0; t < updated.postings.size(); ++t)
            CHECK(updated.postings[t] == rebuilt.postings[t]);
    }
}

TEST_CASE("document modification is remove plus add") {
    IndexOptions opts;
    opts.min_document_frequency = 1;
    std::vector<Document> docs;
    docs.push_back(make_document("a", bytes("alpha beta")));
    docs.push_back(make_document("b", bytes("alpha gamma")));
    InvertedIndex index = build_inverted_index(docs, opts);

    Document modified = make_document("a", bytes("alpha delta"));
    UpdateBatch batch;
    batch.removed_ids.push_back(docs[0].doc_id);
    batch.added.push_back(modified);

    DiffResult d = diff(index, batch, opts);
    InvertedIndex updated = apply_diff(index, batch, d);

    InvertedIndex rebuilt = build_inverted_index(std::vector<Document>{modified, docs[1]}, opts);
    CHECK(updated.dictionary == rebuilt.dictionary);
    CHECK(updated.postings == rebuilt.postings);
    // beta is gone entirely; delta is new
    CHECK_FALSE(updated.term_index("beta").has_value());
    CHECK(updated.term_index("delta").has_value());
}
