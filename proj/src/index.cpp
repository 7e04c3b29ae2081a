// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/index.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>

#include "awc/errors.hpp"

namespace awc {

namespace {

// compact English stopword list; override through IndexOptions
const char* kStopwords[] = {
    "a",     "about", "above", "after",  "again",  "all",   "also",  "am",    "an",
    "and",   "any",   "are",   "as",     "at",     "be",    "because", "been", "before",
    "being", "below", "between", "both", "but",    "by",    "can",   "could", "did",
    "do",    "does",  "doing", "down",   "during", "each",  "few",   "for",   "from",
    "further", "had", "has",   "have",   "having", "he",    "her",   "here",  "hers",
    "him",   "his",   "how",   "i",      "if",     "in",    "into",  "is",    "it",
    "its",   "just",  "me",    "more",   "most",   "my",    "no",    "nor",   "not",
    "now",   "of",    "off",   "on",     "once",   "only",  "or",    "other", "our",
    "out",   "over",  "own",   "same",   "she",    "should", "so",   "some",  "such",
    "than",  "that",  "the",   "their",  "them",   "then",  "there", "these", "they",
    "this",  "those", "through", "to",   "too",    "under", "until", "up",    "very",
    "was",   "we",    "were",  "what",   "when",   "where", "which", "while", "who",
    "whom",  "why",   "will",  "with",   "you",    "your",
};

bool looks_like_html(const std::string& source_id, std::span<const std::uint8_t> raw) {
    auto ends_with = [&](const char* suffix) {
        std::string s = source_id;
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        std::string suf(suffix);
        return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends_with(".html") || ends_with(".htm"))
        return true;
    std::string head(reinterpret_cast<const char*>(raw.data()), std::min<std::size_t>(raw.size(), 256));
    std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
    return head.find("<!doctype html") != std::string::npos || head.find("<html") != std::string::npos;
}

void decode_entity(const std::string& name, std::string& out) {
    if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "quot") out += '"';
    else if (name == "apos" || name == "#39") out += '\'';
    else if (name == "nbsp") out += ' ';
    else out += ' ';
}

// Strips markup, drops script/style bodies, collects href targets.
void extract_html(std::span<const std::uint8_t> raw, std::string& text,
                  std::vector<std::string>& links) {
    const std::string src(reinterpret_cast<const char*>(raw.data()), raw.size());
    std::size_t i = 0;
    auto lower_ahead = [&](std::size_t from, std::size_t len) {
        std::string s = src.substr(from, len);
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '<') {
            std::size_t close = src.find('>', i);
            if (close == std::string::npos)
                break;
            std::string tag = lower_ahead(i + 1, close - i - 1);
            // href extraction
            std::size_t href = tag.find("href");
            if (href != std::string::npos) {
                std::size_t eq = tag.find('=', href);
                if (eq != std::string::npos) {
                    std::size_t start = tag.find_first_not_of(" \t\"'", eq + 1);
                    if (start != std::string::npos) {
                        std::size_t end = tag.find_first_of(" \t\"'>", start);
                        if (end == std::string::npos)
                            end = tag.size();
                        std::string url = tag.substr(start, end - start);
                        if (!url.empty() && url[0] != '#')
                            links.push_back(url);
                    }
                }
            }
            // skip script/style bodies entirely
            if (tag.rfind("script", 0) == 0 || tag.rfind("style", 0) == 0) {
                std::string closer = tag.rfind("script", 0) == 0 ? "</script" : "</style";
                std::size_t end = i;
                for (;;) {
                    end = src.find('<', end + 1);
                    if (end == std::string::npos) {
                        i = src.size();
                        break;
                    }
                    if (lower_ahead(end, closer.size()) == closer) {
                        std::size_t after = src.find('>', end);
                        i = after == std::string::npos ? src.size() : after + 1;
                        break;
                    }
                }
                text += ' ';
                continue;
            }
            i = close + 1;
            text += ' ';
        } else if (c == '&') {
            std::size_t semi = src.find(';', i);
            if (semi != std::string::npos && semi - i <= 8) {
                decode_entity(src.substr(i + 1, semi - i - 1), text);
                i = semi + 1;
            } else {
                text += c;
                ++i;
            }
        } else {
            text += c;
            ++i;
        }
    }
}

}  // namespace

std::vector<std::string> extract_links(std::span<const std::uint8_t> raw) {
    std::string text;
    std::vector<std::string> links;
    extract_html(raw, text, links);
    return links;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words(std::begin(kStopwords), std::end(kStopwords));
    return words;
}

std::vector<std::uint8_t> canonical_content(const std::string& source_id,
                                            std::span<const std::uint8_t> raw) {
    if (!looks_like_html(source_id, raw))
        return {raw.begin(), raw.end()};
    std::string text;
    std::vector<std::string> links;
    extract_html(raw, text, links);
    // collapse whitespace runs
    std::string canon;
    canon.reserve(text.size());
    bool in_space = true;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space)
                canon += ' ';
            in_space = true;
        } else {
            canon += c;
            in_space = false;
        }
    }
    while (!canon.empty() && canon.back() == ' ')
        canon.pop_back();
    for (const auto& link : links) {
        canon += '\n';
        canon += link;
    }
    return {canon.begin(), canon.end()};
}

Document make_document(std::string source_id, std::vector<std::uint8_t> content) {
    Document doc;
    doc.doc_id = hash_to_field(content);
    doc.source_id = std::move(source_id);
    doc.content = std::move(content);
    return doc;
}

std::vector<std::string> tokenize(std::span<const std::uint8_t> content,
                                  const IndexOptions& options) {
    const std::set<std::string>& stop = options.stopwords ? *options.stopwords : default_stopwords();
    std::set<std::string> terms;
    std::string token;
    auto flush = [&] {
        if (!token.empty() && !stop.contains(token))
            terms.insert(token);
        token.clear();
    };
    for (std::uint8_t b : content) {
        if (b >= 0x80) {
            token += static_cast<char>(b);  // UTF-8 continuation/multibyte: keep as-is
        } else if (std::isalnum(b)) {
            token += static_cast<char>(std::tolower(b));
        } else {
            flush();
        }
    }
    flush();
    return {terms.begin(), terms.end()};
}

std::optional<std::size_t> InvertedIndex::term_index(const std::string& term) const {
    auto it = std::lower_bound(dictionary.begin(), dictionary.end(), term);
    if (it == dictionary.end() || *it != term)
        return std::nullopt;
    return static_cast<std::size_t>(it - dictionary.begin());
}

const std::vector<FieldElement>* InvertedIndex::posting(const std::string& term) const {
    auto idx = term_index(term);
    return idx ? &postings[*idx] : nullptr;
}

std::size_t InvertedIndex::max_posting_size() const {
    std::size_t out = 0;
    for (const auto& p : postings)
        out = std::max(out, p.size());
    return out;
}

InvertedIndex build_inverted_index(std::span<const Document> documents,
                                   const IndexOptions& options) {
    std::map<std::string, std::set<FieldElement, FieldElementLess>> table;
    InvertedIndex index;
    for (const auto& doc : documents) {
        index.registry.emplace(doc.doc_id, doc.source_id);
        for (const auto& term : tokenize(doc.content, options))
            table[term].insert(doc.doc_id);
    }
    for (auto& [term, ids] : table) {
        if (ids.size() < options.min_document_frequency)
            continue;
        index.dictionary.push_back(term);
        index.postings.emplace_back(ids.begin(), ids.end());
    }
    return index;
}

InvertedIndex index_from_postings(
    std::vector<std::pair<std::string, std::vector<FieldElement>>> postings,
    std::map<FieldElement, std::string, FieldElementLess> registry) {
    std::sort(postings.begin(), postings.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    InvertedIndex index;
    index.registry = std::move(registry);
    FieldElementLess less;
    for (auto& [term, ids] : postings) {
        if (!index.dictionary.empty() && index.dictionary.back() == term)
            throw FormatError("index_from_postings: duplicate term '" + term + "'");
        std::sort(ids.begin(), ids.end(), less);
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        index.dictionary.push_back(term);
        index.postings.push_back(std::move(ids));
    }
    return index;
}

DiffResult diff(const InvertedIndex& index, const UpdateBatch& batch,
                const IndexOptions& options) {
    std::map<std::string, TermDelta> deltas;
    std::set<FieldElement, FieldElementLess> touched_docs;

    for (const auto& id : batch.removed_ids) {
        if (!index.registry.contains(id))
            throw Error("diff: removal of unknown doc id");
        touched_docs.insert(id);
        for (std::size_t t = 0; t < index.dictionary.size(); ++t) {
            const auto& ids = index.postings[t];
            if (std::binary_search(ids.begin(), ids.end(), id, FieldElementLess{})) {
                TermDelta& d = deltas[index.dictionary[t]];
                d.term = index.dictionary[t];
                d.removes.push_back(id);
            }
        }
    }
    for (const auto& doc : batch.added) {
        if (index.registry.contains(doc.doc_id))
            continue;  // content-addressed duplicate
        touched_docs.insert(doc.doc_id);
        for (const auto& term : tokenize(doc.content, options)) {
            TermDelta& d = deltas[term];
            d.term = term;
            d.new_term = !index.term_index(term).has_value();
            d.adds.push_back(doc.doc_id);
        }
    }

    DiffResult out;
    for (auto& [term, d] : deltas) {
        FieldElementLess less;
        std::sort(d.adds.begin(), d.adds.end(), less);
        std::sort(d.removes.begin(), d.removes.end(), less);
        out.deltas.push_back(std::move(d));
    }
    out.affected_terms = out.deltas.size();
    out.affected_docs = touched_docs.size();
    return out;
}

InvertedIndex apply_diff(const InvertedIndex& index, const UpdateBatch& batch,
                         const DiffResult& diff_result) {
    InvertedIndex out = index;
    for (const auto& id : batch.removed_ids)
        out.registry.erase(id);
    for (const auto& doc : batch.added)
        out.registry.emplace(doc.doc_id, doc.source_id);

    FieldElementLess less;
    for (const auto& d : diff_result.deltas) {
        auto idx = out.term_index(d.term);
        if (!idx) {
            if (d.adds.empty())
                continue;
            auto pos = std::lower_bound(out.dictionary.begin(), out.dictionary.end(), d.term);
            std::size_t at = static_cast<std::size_t>(pos - out.dictionary.begin());
            out.dictionary.insert(pos, d.term);
            out.postings.insert(out.postings.begin() + static_cast<std::ptrdiff_t>(at), d.adds);
            continue;
        }
        std::vector<FieldElement>& ids = out.postings[*idx];
        if (!d.removes.empty()) {
            std::vector<FieldElement> kept;
            std::set_difference(ids.begin(), ids.end(), d.removes.begin(), d.removes.end(),
                                std::back_inserter(kept), less);
            ids = std::move(kept);
        }
        if (!d.adds.empty()) {
            std::vector<FieldElement> merged;
            std::set_union(ids.begin(), ids.end(), d.adds.begin(), d.adds.end(),
                           std::back_inserter(merged), less);
            ids = std::move(merged);
        }
        if (ids.empty()) {
            out.dictionary.erase(out.dictionary.begin() + static_cast<std::ptrdiff_t>(*idx));
            out.postings.erase(out.postings.begin() + static_cast<std::ptrdiff_t>(*idx));
        }
    }
    return out;
}

std::vector<Document> ingest_directory(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path) || !fs::is_directory(path))
        throw IoError("ingest: not a readable directory: " + path);
    std::vector<std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file())
            files.push_back(fs::relative(entry.path(), path).string());
    }
    std::sort(files.begin(), files.end());
    std::vector<Document> docs;
    docs.reserve(files.size());
    for (const auto& rel : files) {
        std::ifstream in(fs::path(path) / rel, std::ios::binary);
        if (!in)
            throw IoError("ingest: cannot read " + rel);
        std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
        docs.push_back(make_document(rel, canonical_content(rel, raw)));
    }
    return docs;
}

}  // namespace awc
