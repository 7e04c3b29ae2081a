// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "awc/accumulator.hpp"
#include "awc/authdict.hpp"
#include "awc/index.hpp"
#include "awc/pairing.hpp"
#include "awc/proof.hpp"

namespace awc {

// Everything the untrusted server needs for one epoch.
struct Bundle {
    InvertedIndex index;
    AccumulationTable table;  // aligned with index.dictionary
    MerkleTree tree;
    std::uint64_t epoch = 0;
};

// Versioned, checksummed container files. All integers big-endian, all
// variable-length fields 4-byte length-prefixed. Loaders reject unknown
// versions, bad checksums, truncation and trailing bytes.
void save_params(const std::string& path, const PublicParams& pp);
PublicParams load_params(const std::string& path);

void save_bundle(const std::string& path, const Bundle& bundle);
Bundle load_bundle(const std::string& path);

void save_digest(const std::string& path, const Digest& digest);
Digest load_digest(const std::string& path);

struct Keystore {
    SecretKey sk;
    Hash32 params_fingerprint{};
};

// Written with owner-only permissions.
void save_keystore(const std::string& path, const Keystore& ks);
Keystore load_keystore(const std::string& path);

// Wire/file encodings of requests and responses (shared by serve mode and
// `prove`/`verify` files). Decoders return false on any malformed input.
std::vector<std::uint8_t> encode_request(const QueryRequest& request);
bool decode_request(std::span<const std::uint8_t> bytes, QueryRequest& out);

std::vector<std::uint8_t> encode_response(const QueryResponse& response);
bool decode_response(std::span<const std::uint8_t> bytes, QueryResponse& out);

void save_response(const std::string& path, const QueryResponse& response);
QueryResponse load_response(const std::string& path);

}  // namespace awc
