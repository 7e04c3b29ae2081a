// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/prover.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <future>

#include "awc/errors.hpp"

namespace awc {

namespace {

// intersect two sorted lists; gallops through the larger side when heavily
// skewed
std::vector<FieldElement> intersect_sorted(const std::vector<FieldElement>& small,
                                           const std::vector<FieldElement>& large) {
    FieldElementLess less;
    std::vector<FieldElement> out;
    if (small.empty() || large.empty())
        return out;
    if (large.size() / std::max<std::size_t>(small.size(), 1) >= 32) {
        for (const auto& x : small) {
            if (std::binary_search(large.begin(), large.end(), x, less))
                out.push_back(x);
        }
        return out;
    }
    std::set_intersection(small.begin(), small.end(), large.begin(), large.end(),
                          std::back_inserter(out), less);
    return out;
}

constexpr std::size_t kMaxFrame = 1 << 20;

bool read_exact(int fd, std::uint8_t* buf, std::size_t len) {
    std::size_t got = 0;
    while (got < len) {
        ssize_t n = ::recv(fd, buf + got, len - got, 0);
        if (n <= 0)
            return false;
        got += static_cast<std::size_t>(n);
    }
    return true;
}

bool write_all(int fd, const std::uint8_t* buf, std::size_t len) {
    std::size_t sent = 0;
    while (sent < len) {
        ssize_t n = ::send(fd, buf + sent, len - sent, MSG_NOSIGNAL);
        if (n <= 0)
            return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

Query Query::normalize(const std::vector<std::string>& raw_terms) {
    std::string joined;
    for (const auto& t : raw_terms) {
        joined += t;
        joined += ' ';
    }
    Query q;
    q.terms = tokenize({reinterpret_cast<const std::uint8_t*>(joined.data()), joined.size()});
    return q;
}

std::vector<FieldElement> answer(const Bundle& bundle, const Query& query) {
    std::vector<const std::vector<FieldElement>*> lists;
    for (const auto& term : query.terms) {
        const auto* posting = bundle.index.posting(term);
        if (!posting)
            return {};  // unknown term
        lists.push_back(posting);
    }
    if (lists.empty())
        return {};
    std::sort(lists.begin(), lists.end(),
              [](const auto* a, const auto* b) { return a->size() < b->size(); });
    std::vector<FieldElement> acc = *lists[0];
    for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i)
        acc = intersect_sorted(acc, *lists[i]);
    return acc;
}

Proof prove(const Bundle& bundle, const PublicParams& pp, const Query& query,
            std::span<const FieldElement> intersection) {
    Proof proof;
    proof.epoch = bundle.epoch;
    proof.part_a = poly_from_roots(intersection);
    if (proof.part_a.size() > pp.powers_g2.size())
        throw DegreeExceedsParams("prove: intersection larger than the degree bound");

    struct KnownTerm {
        std::size_t index;                  // into bundle dictionary
        std::vector<FieldElement> residual; // posting minus intersection
    };
    std::vector<KnownTerm> known;
    bool all_known = true;
    for (const auto& term : query.terms) {
        TermEvidence ev;
        ev.term = term;
        auto idx = bundle.index.term_index(term);
        if (idx) {
            ev.known = true;
            ev.membership = bundle.tree.prove_membership(term);
            FieldElementLess less;
            KnownTerm kt;
            kt.index = *idx;
            const auto& posting = bundle.index.postings[*idx];
            std::set_difference(posting.begin(), posting.end(), intersection.begin(),
                                intersection.end(), std::back_inserter(kt.residual), less);
            known.push_back(std::move(kt));
        } else {
            ev.known = false;
            ev.absence = bundle.tree.prove_absence(term);
            all_known = false;
        }
        proof.part_b.push_back(std::move(ev));
    }

    // subset witnesses, one task per term; an empty intersection makes the
    // witness the accumulation value itself
    proof.part_c.resize(known.size());
    {
        std::vector<std::future<void>> tasks;
        for (std::size_t j = 0; j < known.size(); ++j) {
            if (intersection.empty()) {
                proof.part_c[j] = bundle.table.values[known[j].index];
                continue;
            }
            tasks.push_back(std::async(std::launch::async, [&, j] {
                proof.part_c[j] =
                    subset_witness_from_poly(poly_from_roots(known[j].residual), pp);
            }));
        }
        for (auto& t : tasks)
            t.get();
    }

    if (all_known) {
        std::vector<std::vector<FieldElement>> residuals;
        residuals.reserve(known.size());
        for (auto& kt : known)
            residuals.push_back(std::move(kt.residual));
        proof.part_d = completeness_witnesses(residuals, pp);
    }
    return proof;
}

QueryResponse handle_request(const Bundle& bundle, const PublicParams& pp,
                             const QueryRequest& request, const ProverLimits& limits) {
    QueryResponse response;
    response.epoch = bundle.epoch;
    if (request.terms.empty() || request.terms.size() > limits.max_terms) {
        response.status =
            request.terms.empty() ? ResponseStatus::Malformed : ResponseStatus::OversizedQuery;
        return response;
    }
    if (request.epoch != 0 && request.epoch != bundle.epoch) {
        response.status = ResponseStatus::UnknownEpoch;
        return response;
    }
    Query query = Query::normalize(request.terms);
    if (query.terms.empty() || query.terms.size() > limits.max_terms) {
        response.status =
            query.terms.empty() ? ResponseStatus::Malformed : ResponseStatus::OversizedQuery;
        return response;
    }
    try {
        response.answer = answer(bundle, query);
        response.proof = prove(bundle, pp, query, response.answer);
        response.status = ResponseStatus::Ok;
    } catch (const Error&) {
        response = QueryResponse{};
        response.epoch = bundle.epoch;
        response.status = ResponseStatus::Internal;
    }
    return response;
}

// ------------------------------------------------------------- serve mode

ProofServer::ProofServer(Bundle bundle, PublicParams pp, ProverLimits limits)
    : limits_(limits) {
    state_ = std::make_shared<const Snapshot>(Snapshot{std::move(bundle), std::move(pp)});
}

ProofServer::~ProofServer() {
    stop();
}

std::shared_ptr<const ProofServer::Snapshot> ProofServer::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return state_;
}

void ProofServer::swap_bundle(Bundle bundle) {
    auto cur = snapshot();
    auto next = std::make_shared<const Snapshot>(Snapshot{std::move(bundle), cur->pp});
    std::lock_guard<std::mutex> lock(mu_);
    state_ = std::move(next);
}

void ProofServer::start(const std::string& host, std::uint16_t port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0)
        throw IoError("serve: socket creation failed");
    int opt = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &opt, sizeof(opt));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw IoError("serve: bad listen address: " + host);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
        throw IoError("serve: bind failed");
    if (::listen(listen_fd_, 64) != 0)
        throw IoError("serve: listen failed");
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
}

void ProofServer::stop() {
    if (!running_.exchange(false))
        return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (acceptor_.joinable())
        acceptor_.join();
    std::lock_guard<std::mutex> lock(workers_mu_);
    for (int fd : conn_fds_)
        ::shutdown(fd, SHUT_RDWR);  // unblock idle connections
    for (auto& w : workers_)
        if (w.joinable())
            w.join();
    workers_.clear();
    conn_fds_.clear();
}

void ProofServer::accept_loop() {
    while (running_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (!running_)
                break;
            continue;
        }
        std::lock_guard<std::mutex> lock(workers_mu_);
        conn_fds_.push_back(fd);
        workers_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void ProofServer::serve_connection(int fd) {
    for (;;) {
        std::uint8_t len_buf[4];
        if (!read_exact(fd, len_buf, 4))
            break;
        std::size_t frame_len =
            (std::size_t{len_buf[0]} << 24) | (std::size_t{len_buf[1]} << 16) |
            (std::size_t{len_buf[2]} << 8) | std::size_t{len_buf[3]};
        if (frame_len == 0 || frame_len > kMaxFrame)
            break;
        std::vector<std::uint8_t> frame(frame_len);
        if (!read_exact(fd, frame.data(), frame_len))
            break;

        auto snap = snapshot();
        QueryResponse response;
        QueryRequest request;
        if (!decode_request(frame, request)) {
            response.status = ResponseStatus::Malformed;
            response.epoch = snap->bundle.epoch;
        } else {
            response = handle_request(snap->bundle, snap->pp, request, limits_);
        }
        std::vector<std::uint8_t> body = encode_response(response);
        std::uint8_t out_len[4] = {static_cast<std::uint8_t>(body.size() >> 24),
                                   static_cast<std::uint8_t>(body.size() >> 16),
                                   static_cast<std::uint8_t>(body.size() >> 8),
                                   static_cast<std::uint8_t>(body.size())};
        if (!write_all(fd, out_len, 4) || !write_all(fd, body.data(), body.size()))
            break;
    }
    ::close(fd);
}

}  // namespace awc
