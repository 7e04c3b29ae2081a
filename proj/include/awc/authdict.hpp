// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awc/pairing.hpp"
#include "awc/signature.hpp"

namespace awc {

using Hash32 = std::array<std::uint8_t, 32>;

struct MerkleLeaf {
    std::string term;
    G1Element acc;
};

struct MerkleProof {
    std::string term;
    G1Element acc;
    std::uint64_t position = 0;
    std::vector<Hash32> siblings;  // leaf-to-root order
};

// Bracketing evidence that a term is not in the dictionary: the two
// lexicographically adjacent leaves, or a single boundary leaf at either
// extreme.
struct AbsenceProof {
    std::optional<MerkleProof> below;  // leaf with term < query
    std::optional<MerkleProof> above;  // leaf with query < term
};

// Hash tree over (term, accumulation value) pairs. Leaves are strictly
// sorted by term; an odd node at any level is hashed with a copy of itself.
class MerkleTree {
public:
    MerkleTree() = default;

    // Sorts entries by term; throws FormatError on duplicate terms or empty
    // input.
    static MerkleTree build(std::vector<MerkleLeaf> entries);

    const Hash32& root() const { return levels_.back()[0]; }
    std::size_t leaf_count() const { return leaves_.size(); }
    std::span<const MerkleLeaf> leaves() const { return leaves_; }
    std::size_t height() const { return levels_.size() - 1; }

    bool contains(const std::string& term) const;
    const G1Element* find(const std::string& term) const;

    MerkleProof prove_membership(const std::string& term) const;
    AbsenceProof prove_absence(const std::string& term) const;

    // Recomputes one root-ward path; throws FormatError when term is absent.
    void update_leaf(const std::string& term, const G1Element& acc);

    static Hash32 leaf_hash(const MerkleLeaf& leaf);

private:
    std::vector<MerkleLeaf> leaves_;
    std::vector<std::vector<Hash32>> levels_;  // levels_[0] = leaf hashes

    MerkleProof prove_at(std::size_t index) const;
    std::size_t index_of(const std::string& term) const;
};

bool verify_path(const MerkleProof& proof, const Hash32& root);

// verify_path plus evidence that the leaf is the rightmost one: at every
// level the sibling is on the left or equals the running hash (the odd-node
// duplication rule).
bool verify_path_rightmost(const MerkleProof& proof, const Hash32& root);

bool verify_absence(const AbsenceProof& proof, const std::string& term, const Hash32& root);

// Signed (root, epoch) pair bound to the public-params fingerprint; the
// client's sole trust anchor.
struct Digest {
    Hash32 root{};
    std::uint64_t epoch = 0;
    Hash32 params_fingerprint{};
    std::array<std::uint8_t, 64> signature{};
};

Digest sign_digest(const Hash32& root, std::uint64_t epoch, const Hash32& params_fingerprint,
                   const sig::SigningKey& key);
bool verify_digest(const Digest& digest, const sig::VerifyKey& key);

}  // namespace awc
