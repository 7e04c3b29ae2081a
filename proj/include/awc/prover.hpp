// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>

#include "awc/protocol.hpp"

namespace awc {

struct ProverLimits {
    std::size_t max_terms = 16;
};

// Exact multi-way intersection of the query terms' posting lists; an unknown
// term makes the answer empty.
std::vector<FieldElement> answer(const Bundle& bundle, const Query& query);

// Four-part proof for answer == intersection; per-term witness work runs
// concurrently. Throws on internal inconsistency (gcd != 1, degree overflow).
Proof prove(const Bundle& bundle, const PublicParams& pp, const Query& query,
            std::span<const FieldElement> intersection);

// Decoded-request entry point shared by serve mode and the offline CLI.
QueryResponse handle_request(const Bundle& bundle, const PublicParams& pp,
                             const QueryRequest& request, const ProverLimits& limits = {});

// Long-running request loop over length-prefixed frames on a TCP socket.
// Responses are served from an immutable snapshot; swap_bundle installs a new
// epoch atomically.
class ProofServer {
public:
    ProofServer(Bundle bundle, PublicParams pp, ProverLimits limits = {});
    ~ProofServer();

    // Binds and starts the accept loop; port 0 picks an ephemeral port.
    void start(const std::string& host, std::uint16_t port);
    void stop();
    std::uint16_t port() const { return port_; }

    void swap_bundle(Bundle bundle);

private:
    struct Snapshot {
        Bundle bundle;
        PublicParams pp;
    };

    std::shared_ptr<const Snapshot> snapshot() const;
    void accept_loop();
    void serve_connection(int fd);

    mutable std::mutex mu_;
    std::shared_ptr<const Snapshot> state_;
    ProverLimits limits_;
    std::atomic<bool> running_{false};
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::thread acceptor_;
    std::vector<std::thread> workers_;
    std::vector<int> conn_fds_;
    std::mutex workers_mu_;
};

}  // namespace awc
