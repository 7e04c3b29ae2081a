// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "httplib.h"

#include "awc/errors.hpp"
#include "awc/index.hpp"

namespace awc {

namespace {

struct ParsedUrl {
    std::string host_port;  // host[:port]
    std::string path;
};

bool parse_url(const std::string& url, ParsedUrl& out) {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        return false;
    // plain-http fetcher; transport security is out of scope here
    if (url.compare(0, scheme, "http") != 0)
        return false;
    std::size_t host_start = scheme + 3;
    std::size_t path_start = url.find('/', host_start);
    if (path_start == std::string::npos) {
        out.host_port = url.substr(host_start);
        out.path = "/";
    } else {
        out.host_port = url.substr(host_start, path_start - host_start);
        out.path = url.substr(path_start);
    }
    return !out.host_port.empty();
}

}  // namespace

std::vector<Document> ingest_url_list(const std::string& list_path, const FetchOptions& options) {
    std::ifstream in(list_path);
    if (!in)
        throw IoError("ingest: cannot read url list: " + list_path);

    struct Item {
        std::string url;
        std::size_t depth;
    };
    std::deque<Item> frontier;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty() && line[0] != '#')
            frontier.push_back({line, 0});
    }

    std::set<std::string> seen;
    std::vector<Document> docs;
    std::size_t skipped = 0;
    while (!frontier.empty()) {
        Item item = frontier.front();
        frontier.pop_front();
        if (seen.contains(item.url))
            continue;
        if (docs.size() >= options.max_pages) {
            ++skipped;
            continue;
        }
        seen.insert(item.url);

        ParsedUrl parsed;
        if (!parse_url(item.url, parsed))
            continue;
        httplib::Client client(("http://" + parsed.host_port).c_str());
        client.set_connection_timeout(5);
        client.set_read_timeout(5);
        auto res = client.Get(parsed.path.c_str());
        if (!res || res->status != 200)
            continue;
        std::vector<std::uint8_t> raw(res->body.begin(), res->body.end());
        docs.push_back(make_document(item.url, canonical_content(item.url, raw)));

        if (item.depth < options.max_depth) {
            for (const auto& link : extract_links(raw)) {
                std::string next;
                ParsedUrl link_parsed;
                if (parse_url(link, link_parsed)) {
                    if (link_parsed.host_port != parsed.host_port)
                        continue;  // same-host policy
                    next = link;
                } else if (!link.empty() && link[0] == '/') {
                    next = "http://" + parsed.host_port + link;
                } else {
                    continue;
                }
                if (!seen.contains(next))
                    frontier.push_back({next, item.depth + 1});
            }
        }
    }
    if (options.skipped)
        *options.skipped = skipped;
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.source_id < b.source_id; });
    return docs;
}

}  // namespace awc
