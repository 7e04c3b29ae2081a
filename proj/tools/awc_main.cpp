// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
//
// Unified CLI: crawl | update | publish-digest | serve | prove | verify | bench
// Exit codes: 0 success/accept, 1 reject, 2 usage, 3 I/O or format, 4 internal.

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "awc/bench.hpp"
#include "awc/crawler.hpp"
#include "awc/errors.hpp"
#include "awc/prover.hpp"
#include "awc/verifier.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace awc;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) {
    g_stop = 1;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read stopword file: " + path);
    std::set<std::string> words;
    std::string word;
    while (in >> word)
        words.insert(word);
    return words;
}

struct StorePaths {
    fs::path bundle, params, client_params, digest, keystore;
    explicit StorePaths(const fs::path& dir)
        : bundle(dir / "bundle.awcb"),
          params(dir / "params.awcp"),
          client_params(dir / "client-params.awcp"),
          digest(dir / "digest.awcd"),
          keystore(dir / "keystore.awck") {}
};

int cmd_crawl(const std::string& input, const std::string& url_list, const std::string& out_dir,
              std::uint64_t n_override, std::size_t min_df, const std::string& stopword_file,
              std::size_t max_depth, std::size_t max_pages, std::uint64_t client_degree) {
    IndexOptions index_opts;
    index_opts.min_document_frequency = min_df;
    std::set<std::string> stopwords;
    if (!stopword_file.empty()) {
        stopwords = load_stopwords(stopword_file);
        index_opts.stopwords = &stopwords;
    }

    std::vector<Document> docs;
    if (!input.empty()) {
        docs = ingest_directory(input);
    } else {
        FetchOptions fetch;
        fetch.max_depth = max_depth;
        fetch.max_pages = max_pages;
        std::size_t skipped = 0;
        fetch.skipped = &skipped;
        docs = ingest_url_list(url_list, fetch);
        if (skipped)
            std::cerr << "fetch limit reached, skipped " << skipped << " pages\n";
    }
    std::cerr << "ingested " << docs.size() << " documents\n";

    CrawlerOptions options;
    options.index = index_opts;
    if (n_override)
        options.n_override = n_override;
    SetupResult result = setup(docs, options, system_random());
    std::cerr << "indexed " << result.bundle.index.term_count() << " terms, degree bound "
              << result.pp.n << ", epoch 0\n";

    fs::create_directories(out_dir);
    StorePaths paths{out_dir};
    save_bundle(paths.bundle.string(), result.bundle);
    save_params(paths.params.string(), result.pp);
    if (client_degree)
        save_params(paths.client_params.string(), truncate_params(result.pp, client_degree));
    save_digest(paths.digest.string(), result.digest);
    save_keystore(paths.keystore.string(), {result.sk, result.pp.fingerprint});
    std::cout << json{{"terms", result.bundle.index.term_count()},
                      {"documents", result.bundle.index.registry.size()},
                      {"degree_bound", result.pp.n},
                      {"epoch", 0},
                      {"out", out_dir}}
                     .dump()
              << "\n";
    return kExitAccept;
}

int cmd_update(const std::string& store_dir, const std::string& add_dir,
               const std::vector<std::string>& remove_sources, bool heartbeat) {
    StorePaths paths{store_dir};
    Bundle bundle = load_bundle(paths.bundle.string());
    PublicParams pp = load_params(paths.params.string());
    Keystore ks = load_keystore(paths.keystore.string());
    if (ks.params_fingerprint != pp.fingerprint)
        throw FormatError("keystore does not match the stored public parameters");

    UpdateBatch batch;
    if (!add_dir.empty())
        batch.added = ingest_directory(add_dir);
    for (const auto& source : remove_sources) {
        bool found = false;
        for (const auto& [id, src] : bundle.index.registry) {
            if (src == source) {
                batch.removed_ids.push_back(id);
                found = true;
                break;
            }
        }
        if (!found)
            throw Error("update: unknown source id: " + source);
    }
    if (batch.added.empty() && batch.removed_ids.empty() && !heartbeat)
        throw Error("update: nothing to do (use --heartbeat for an epoch bump)");

    IndexOptions opts;
    opts.min_document_frequency = 1;  // updates bypass initial pruning
    UpdateResult result = apply_update(bundle, batch, ks.sk, pp, opts);

    save_bundle(paths.bundle.string(), bundle);
    save_digest(paths.digest.string(), result.digest);
    std::cout << json{{"epoch", bundle.epoch},
                      {"affected_terms", result.diff.affected_terms},
                      {"affected_docs", result.diff.affected_docs}}
                     .dump()
              << "\n";
    return kExitAccept;
}

int cmd_serve(const std::string& bundle_path, const std::string& params_path,
              const std::string& listen, std::size_t max_terms) {
    Bundle bundle = load_bundle(bundle_path);
    PublicParams pp = load_params(params_path);

    auto colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw Error("serve: listen address must be host:port");
    std::string host = listen.substr(0, colon);
    auto port = static_cast<std::uint16_t>(std::stoi(listen.substr(colon + 1)));

    ProverLimits limits;
    limits.max_terms = max_terms;
    ProofServer server(std::move(bundle), std::move(pp), limits);
    server.start(host, port);
    std::cerr << "serving on " << host << ":" << server.port() << "\n";
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop)
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return kExitAccept;
}

int cmd_prove(const std::string& bundle_path, const std::string& params_path,
              const std::string& query_text, const std::string& out_path, std::uint64_t epoch,
              std::size_t max_terms) {
    Bundle bundle = load_bundle(bundle_path);
    PublicParams pp = load_params(params_path);

    QueryRequest request;
    request.epoch = epoch;
    request.terms = {query_text};
    ProverLimits limits;
    limits.max_terms = max_terms;
    QueryResponse response = handle_request(bundle, pp, request, limits);
    save_response(out_path, response);

    json summary{{"status", static_cast<int>(response.status)},
                 {"epoch", response.epoch},
                 {"answer_size", response.answer.size()},
                 {"response_bytes", encode_response(response).size()},
                 {"out", out_path}};
    std::cout << summary.dump() << "\n";
    return response.status == ResponseStatus::Ok ? kExitAccept : kExitReject;
}

int cmd_verify(const std::string& digest_path, const std::string& params_path,
               const std::string& response_path, const std::string& query_text,
               std::uint64_t min_epoch) {
    Digest digest = load_digest(digest_path);
    PublicParams pp = load_params(params_path);

    Query query = Query::normalize({query_text});
    Verdict verdict;
    QueryResponse response;
    try {
        response = load_response(response_path);
        verdict = verify(query, response, digest, pp, FreshnessPolicy{min_epoch}, system_random());
    } catch (const FormatError& e) {
        verdict = Verdict::reject(Verdict::Failure::Malformed, e.what());
    }

    json out{{"accepted", verdict.accepted},
             {"failing_check", failure_name(verdict.failure)},
             {"epoch", digest.epoch},
             {"answer_size", response.answer.size()}};
    if (!verdict.accepted) {
        out["detail"] = verdict.detail;
        if (verdict.failing_term >= 0)
            out["failing_term"] = verdict.failing_term;
    } else {
        json answer = json::array();
        for (const auto& id : response.answer) {
            std::array<std::uint8_t, 32> bytes;
            id.to_bytes(bytes);
            std::string hex;
            for (auto b : bytes) {
                char buf[3];
                std::snprintf(buf, sizeof(buf), "%02x", b);
                hex += buf;
            }
            answer.push_back(hex);
        }
        out["answer"] = answer;
    }
    std::cout << out.dump() << "\n";
    return verdict.accepted ? kExitAccept : kExitReject;
}

bench::SyntheticSpec default_bench_spec() {
    bench::SyntheticSpec spec;
    spec.seed = 1;
    spec.queries = {
        {"delta20", {2000, 2000}, 20},   {"delta40", {2000, 2000}, 40},
        {"delta80", {2000, 2000}, 80},   {"delta160", {2000, 2000}, 160},
        {"smallN", {400, 400}, 80},      {"bigN", {4000, 4000}, 80},
        {"scale1k", {1000, 1000}, 100},  {"scale2k", {2000, 2000}, 100},
        {"scale4k", {4000, 4000}, 100},  {"scale8k", {8000, 8000}, 100},
        {"freqfreq", {3000, 3000}, 100}, {"freqrare", {5700, 300}, 100},
    };
    spec.updates.dictionary_terms = 1000;
    spec.updates.posting_size = 4;
    spec.updates.t_primes = {10, 100, 1000};
    return spec;
}

bench::SyntheticSpec spec_from_json(const json& j) {
    bench::SyntheticSpec spec;
    spec.seed = j.value("seed", 1);
    for (const auto& q : j.value("queries", json::array())) {
        bench::QuerySpec qs;
        qs.name = q.value("name", "");
        for (const auto& len : q.at("list_sizes"))
            qs.list_sizes.push_back(len.get<std::size_t>());
        qs.intersection = q.value("intersection", 0);
        spec.queries.push_back(std::move(qs));
    }
    if (j.contains("updates")) {
        const auto& u = j["updates"];
        spec.updates.dictionary_terms = u.value("terms", 0);
        spec.updates.posting_size = u.value("posting_size", 4);
        for (const auto& t : u.value("t_primes", json::array()))
            spec.updates.t_primes.push_back(t.get<std::size_t>());
    }
    return spec;
}

int cmd_bench(const std::string& spec_path, const std::string& out_dir, int repetitions) {
    bench::SyntheticSpec spec;
    if (spec_path.empty()) {
        spec = default_bench_spec();
    } else {
        std::ifstream in(spec_path);
        if (!in)
            throw IoError("cannot read bench spec: " + spec_path);
        spec = spec_from_json(json::parse(in));
    }
    bench::SuiteOptions options;
    options.repetitions = repetitions;
    options.verbose = true;
    bench::SuiteResult result = bench::run_suite(spec, options);
    fs::create_directories(out_dir);
    bench::write_query_csv((fs::path(out_dir) / "queries.csv").string(), result.rows);
    if (!result.update_rows.empty())
        bench::write_update_csv((fs::path(out_dir) / "updates.csv").string(), result.update_rows);
    std::cout << json{{"queries", result.rows.size()},
                      {"update_batches", result.update_rows.size()},
                      {"out", out_dir}}
                     .dump()
              << "\n";
    return kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable conjunctive keyword search"};
    app.require_subcommand(1);

    std::string config_path;
    std::string log_level = "info";
    app.add_option("--config", config_path, "json file with option defaults")->expected(1);
    app.add_option("--log-level", log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}));

    // crawl
    auto* crawl = app.add_subcommand("crawl", "index a corpus and emit all artifacts");
    std::string crawl_input, crawl_urls, crawl_out = "store";
    std::uint64_t crawl_n = 0, crawl_client_degree = 0;
    std::size_t crawl_min_df = 2, crawl_depth = 0, crawl_pages = 32;
    std::string crawl_stopwords;
    crawl->add_option("--input", crawl_input, "corpus directory");
    crawl->add_option("--url-list", crawl_urls, "file with one url per line");
    crawl->add_option("--out", crawl_out, "output directory");
    crawl->add_option("--n", crawl_n, "degree bound override");
    crawl->add_option("--min-df", crawl_min_df, "minimum document frequency");
    crawl->add_option("--stopwords", crawl_stopwords, "stopword file override");
    crawl->add_option("--max-depth", crawl_depth, "crawl depth for url lists");
    crawl->add_option("--max-pages", crawl_pages, "page cap for url lists");
    crawl->add_option("--client-degree", crawl_client_degree,
                      "also write client-params.awcp truncated to this degree");

    // update
    auto* update = app.add_subcommand("update", "apply an update batch to a store");
    std::string update_store, update_add;
    std::vector<std::string> update_remove;
    bool update_heartbeat = false;
    update->add_option("--store", update_store, "store directory")->required();
    update->add_option("--add", update_add, "directory of documents to add");
    update->add_option("--remove-source", update_remove, "source id(s) to remove");
    update->add_flag("--heartbeat", update_heartbeat, "bump the epoch with an empty batch");

    // publish-digest
    auto* publish = app.add_subcommand("publish-digest", "re-sign the current root (heartbeat)");
    std::string publish_store;
    publish->add_option("--store", publish_store, "store directory")->required();

    // serve
    auto* serve = app.add_subcommand("serve", "answer queries over tcp");
    std::string serve_bundle, serve_params, serve_listen = "127.0.0.1:7311";
    std::size_t serve_max_terms = 16;
    serve->add_option("--bundle", serve_bundle, "bundle file")->required();
    serve->add_option("--params", serve_params, "params file")->required();
    serve->add_option("--listen", serve_listen, "host:port");
    serve->add_option("--max-terms", serve_max_terms, "query term cap");

    // prove
    auto* prove_cmd = app.add_subcommand("prove", "answer one query to a response file");
    std::string prove_bundle, prove_params, prove_query, prove_out = "response.awcr";
    std::uint64_t prove_epoch = 0;
    std::size_t prove_max_terms = 16;
    prove_cmd->add_option("--bundle", prove_bundle, "bundle file")->required();
    prove_cmd->add_option("--params", prove_params, "params file")->required();
    prove_cmd->add_option("--query", prove_query, "space-separated terms")->required();
    prove_cmd->add_option("--out", prove_out, "response output file");
    prove_cmd->add_option("--epoch", prove_epoch, "expected epoch (0 = current)");
    prove_cmd->add_option("--max-terms", prove_max_terms, "query term cap");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify a response file");
    std::string verify_digest_path, verify_params, verify_response, verify_query;
    std::uint64_t verify_min_epoch = 0;
    verify_cmd->add_option("--digest", verify_digest_path, "digest file")->required();
    verify_cmd->add_option("--params", verify_params, "params file")->required();
    verify_cmd->add_option("--response", verify_response, "response file")->required();
    verify_cmd->add_option("--query", verify_query, "space-separated terms")->required();
    verify_cmd->add_option("--min-epoch", verify_min_epoch, "freshness floor");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "synthetic measurement suite");
    std::string bench_spec, bench_out = "bench-out";
    int bench_reps = 5;
    bench_cmd->add_option("--spec", bench_spec, "json spec file (defaults to built-in)");
    bench_cmd->add_option("--out", bench_out, "output directory for csv files");
    bench_cmd->add_option("--repetitions", bench_reps, "timing repetitions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw IoError("cannot read config: " + config_path);
            json cfg = json::parse(in);
            // config supplies defaults; explicit flags win
            if (cfg.contains("min_df") && crawl->count("--min-df") == 0)
                crawl_min_df = cfg["min_df"].get<std::size_t>();
            if (cfg.contains("stopwords") && crawl->count("--stopwords") == 0)
                crawl_stopwords = cfg["stopwords"].get<std::string>();
            if (cfg.contains("max_terms")) {
                if (serve->count("--max-terms") == 0)
                    serve_max_terms = cfg["max_terms"].get<std::size_t>();
                if (prove_cmd->count("--max-terms") == 0)
                    prove_max_terms = cfg["max_terms"].get<std::size_t>();
            }
            if (cfg.contains("listen") && serve->count("--listen") == 0)
                serve_listen = cfg["listen"].get<std::string>();
        }
        if (log_level == "quiet") {
            static std::ofstream devnull("/dev/null");
            std::cerr.rdbuf(devnull.rdbuf());
        }
        if (crawl->parsed()) {
            if (crawl_input.empty() == crawl_urls.empty()) {
                std::cerr << "crawl: exactly one of --input / --url-list is required\n";
                return kExitUsage;
            }
            return cmd_crawl(crawl_input, crawl_urls, crawl_out, crawl_n, crawl_min_df,
                             crawl_stopwords, crawl_depth, crawl_pages, crawl_client_degree);
        }
        if (update->parsed())
            return cmd_update(update_store, update_add, update_remove, update_heartbeat);
        if (publish->parsed())
            return cmd_update(publish_store, "", {}, true);
        if (serve->parsed())
            return cmd_serve(serve_bundle, serve_params, serve_listen, serve_max_terms);
        if (prove_cmd->parsed())
            return cmd_prove(prove_bundle, prove_params, prove_query, prove_out, prove_epoch,
                             prove_max_terms);
        if (verify_cmd->parsed())
            return cmd_verify(verify_digest_path, verify_params, verify_response, verify_query,
                              verify_min_epoch);
        if (bench_cmd->parsed())
            return cmd_bench(bench_spec, bench_out, bench_reps);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
