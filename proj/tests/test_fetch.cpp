// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"

#include "awc/index.hpp"
#include "doctest.h"

using namespace awc;
namespace fs = std::filesystem;

TEST_CASE("bounded same-host fetch over a url list") {
    httplib::Server server;
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("<html><body>alpha beta <a href=\"/page2.html\">next</a>"
                        "<a href=\"http://other-host.example/x\">offsite</a></body></html>",
                        "text/html");
    });
    server.Get("/page2.html", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("<html><body>gamma delta <a href=\"/page3.html\">more</a></body></html>",
                        "text/html");
    });
    server.Get("/page3.html", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("<html><body>epsilon</body></html>", "text/html");
    });

    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fs::path list = fs::temp_directory_path() / "awc_test_urls.txt";
    {
        std::ofstream out(list);
        out << "# seed page\n";
        out << "http://127.0.0.1:" << port << "/\n";
    }

    SUBCASE("depth 0 fetches only the listed page") {
        FetchOptions options;
        options.max_depth = 0;
        auto docs = ingest_url_list(list.string(), options);
        REQUIRE(docs.size() == 1);
        std::string text(docs[0].content.begin(), docs[0].content.end());
        CHECK(text.find("alpha beta") != std::string::npos);
    }

    SUBCASE("depth 1 follows same-host links only") {
        FetchOptions options;
        options.max_depth = 1;
        auto docs = ingest_url_list(list.string(), options);
        REQUIRE(docs.size() == 2);  // page3 is at depth 2, offsite is skipped
        bool has_page2 = false;
        for (const auto& doc : docs)
            if (doc.source_id.find("page2") != std::string::npos)
                has_page2 = true;
        CHECK(has_page2);
    }

    SUBCASE("max_pages caps the crawl and reports the overflow") {
        FetchOptions options;
        options.max_depth = 3;
        options.max_pages = 1;
        std::size_t skipped = 0;
        options.skipped = &skipped;
        auto docs = ingest_url_list(list.string(), options);
        CHECK(docs.size() == 1);
        CHECK(skipped > 0);
    }

    server.stop();
    listener.join();
}
