// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "awc/index.hpp"

namespace awc::testing {

// Toy 9-document, 8-term corpus. Postings use literal small integers as
// document identifiers, which keeps hand-computed polynomial coefficients
// meaningful.
struct Toy {
    static constexpr const char* kTerms[8] = {"computer", "disk", "hard", "memory",
                                              "mouse",    "port", "ram",  "system"};
    // term -> documents containing it
    static const std::map<std::string, std::vector<int>>& postings() {
        static const std::map<std::string, std::vector<int>> table = {
            {"computer", {6, 8, 9}},       {"disk", {1, 2, 4, 5, 6, 7}},
            {"hard", {1, 3, 5, 7, 8, 9}},  {"memory", {1, 4, 7}},
            {"mouse", {2, 5}},             {"port", {3, 5, 9}},
            {"ram", {5, 6, 7}},            {"system", {1, 7}},
        };
        return table;
    }

    // doc -> term list (transposed view used to write fixture files)
    static std::map<int, std::vector<std::string>> documents() {
        std::map<int, std::vector<std::string>> docs;
        for (const auto& [term, ids] : postings())
            for (int id : ids)
                docs[id].push_back(term);
        return docs;
    }
};

inline InvertedIndex toy_index() {
    std::vector<std::pair<std::string, std::vector<FieldElement>>> postings;
    std::map<FieldElement, std::string, FieldElementLess> registry;
    for (const auto& [term, ids] : Toy::postings()) {
        std::vector<FieldElement> elems;
        for (int id : ids)
            elems.push_back(FieldElement::from_u64(static_cast<std::uint64_t>(id)));
        postings.emplace_back(term, std::move(elems));
    }
    for (const auto& [id, terms] : Toy::documents()) {
        (void)terms;
        registry.emplace(FieldElement::from_u64(static_cast<std::uint64_t>(id)),
                         "doc-" + std::to_string(id));
    }
    return index_from_postings(std::move(postings), std::move(registry));
}

// Writes the corpus as one text file per document.
inline void write_toy_corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [id, terms] : Toy::documents()) {
        std::ofstream out(dir / ("doc" + std::to_string(id) + ".txt"));
        for (const auto& term : terms)
            out << term << "\n";
    }
}

}  // namespace awc::testing
