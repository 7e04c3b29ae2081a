// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/authdict.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "awc/errors.hpp"

namespace awc {

namespace {

constexpr std::uint8_t kLeafDomain = 0x00;
constexpr std::uint8_t kNodeDomain = 0x01;

struct Sha256 {
    EVP_MD_CTX* ctx;
    Sha256() : ctx(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr); }
    ~Sha256() { EVP_MD_CTX_free(ctx); }
    void update(std::span<const std::uint8_t> data) {
        EVP_DigestUpdate(ctx, data.data(), data.size());
    }
    void update_byte(std::uint8_t b) { EVP_DigestUpdate(ctx, &b, 1); }
    Hash32 final() {
        Hash32 out;
        unsigned int len = 32;
        EVP_DigestFinal_ex(ctx, out.data(), &len);
        return out;
    }
};

Hash32 node_hash(const Hash32& left, const Hash32& right) {
    Sha256 h;
    h.update_byte(kNodeDomain);
    h.update(left);
    h.update(right);
    return h.final();
}

void put_u32(Sha256& h, std::uint32_t v) {
    std::uint8_t buf[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                           static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    h.update(buf);
}

}  // namespace

Hash32 MerkleTree::leaf_hash(const MerkleLeaf& leaf) {
    Sha256 h;
    h.update_byte(kLeafDomain);
    put_u32(h, static_cast<std::uint32_t>(leaf.term.size()));
    h.update({reinterpret_cast<const std::uint8_t*>(leaf.term.data()), leaf.term.size()});
    std::array<std::uint8_t, 32> acc_bytes;
    detail::g1_to_bytes(leaf.acc, acc_bytes);
    h.update(acc_bytes);
    return h.final();
}

MerkleTree MerkleTree::build(std::vector<MerkleLeaf> entries) {
    if (entries.empty())
        throw FormatError("merkle build: no entries");
    std::sort(entries.begin(), entries.end(),
              [](const MerkleLeaf& a, const MerkleLeaf& b) { return a.term < b.term; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].term == entries[i - 1].term)
            throw FormatError("merkle build: duplicate term '" + entries[i].term + "'");

    MerkleTree tree;
    tree.leaves_ = std::move(entries);
    std::vector<Hash32> level(tree.leaves_.size());
    for (std::size_t i = 0; i < tree.leaves_.size(); ++i)
        level[i] = leaf_hash(tree.leaves_[i]);
    tree.levels_.push_back(std::move(level));
    while (tree.levels_.back().size() > 1) {
        const auto& prev = tree.levels_.back();
        std::vector<Hash32> next((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            const Hash32& left = prev[2 * i];
            const Hash32& right = (2 * i + 1 < prev.size()) ? prev[2 * i + 1] : prev[2 * i];
            next[i] = node_hash(left, right);
        }
        tree.levels_.push_back(std::move(next));
    }
    return tree;
}

std::size_t MerkleTree::index_of(const std::string& term) const {
    auto it = std::lower_bound(leaves_.begin(), leaves_.end(), term,
                               [](const MerkleLeaf& l, const std::string& t) { return l.term < t; });
    if (it == leaves_.end() || it->term != term)
        return leaves_.size();
    return static_cast<std::size_t>(it - leaves_.begin());
}

bool MerkleTree::contains(const std::string& term) const {
    return index_of(term) < leaves_.size();
}

const G1Element* MerkleTree::find(const std::string& term) const {
    std::size_t idx = index_of(term);
    return idx < leaves_.size() ? &leaves_[idx].acc : nullptr;
}

MerkleProof MerkleTree::prove_at(std::size_t index) const {
    MerkleProof proof;
    proof.term = leaves_[index].term;
    proof.acc = leaves_[index].acc;
    proof.position = index;
    std::size_t i = index;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
        const auto& nodes = levels_[level];
        std::size_t sibling = i ^ 1;
        proof.siblings.push_back(sibling < nodes.size() ? nodes[sibling] : nodes[i]);
        i >>= 1;
    }
    return proof;
}

MerkleProof MerkleTree::prove_membership(const std::string& term) const {
    std::size_t idx = index_of(term);
    if (idx >= leaves_.size())
        throw FormatError("prove_membership: term absent: '" + term + "'");
    return prove_at(idx);
}

AbsenceProof MerkleTree::prove_absence(const std::string& term) const {
    if (contains(term))
        throw FormatError("prove_absence: term present: '" + term + "'");
    auto it = std::lower_bound(leaves_.begin(), leaves_.end(), term,
                               [](const MerkleLeaf& l, const std::string& t) { return l.term < t; });
    AbsenceProof proof;
    std::size_t idx = static_cast<std::size_t>(it - leaves_.begin());
    if (idx > 0)
        proof.below = prove_at(idx - 1);
    if (idx < leaves_.size())
        proof.above = prove_at(idx);
    return proof;
}

void MerkleTree::update_leaf(const std::string& term, const G1Element& acc) {
    std::size_t idx = index_of(term);
    if (idx >= leaves_.size())
        throw FormatError("update_leaf: term absent: '" + term + "'");
    leaves_[idx].acc = acc;
    levels_[0][idx] = leaf_hash(leaves_[idx]);
    std::size_t i = idx;
    for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
        const auto& nodes = levels_[level];
        std::size_t left = i & ~std::size_t{1};
        std::size_t right = left + 1;
        const Hash32& l = nodes[left];
        const Hash32& r = right < nodes.size() ? nodes[right] : nodes[left];
        i >>= 1;
        levels_[level + 1][i] = node_hash(l, r);
    }
}

namespace {

bool chain_to_root(const MerkleProof& proof, const Hash32& root, bool* rightmost) {
    Hash32 h = MerkleTree::leaf_hash({proof.term, proof.acc});
    std::uint64_t pos = proof.position;
    bool right_edge = true;
    for (const Hash32& sibling : proof.siblings) {
        if (pos & 1) {
            // the odd-node duplication rule only ever pairs a node with a copy
            // of itself on the right, so a self-sibling on the left marks a
            // non-canonical position claim
            if (sibling == h)
                return false;
            h = node_hash(sibling, h);
        } else {
            if (sibling != h)
                right_edge = false;
            h = node_hash(h, sibling);
        }
        pos >>= 1;
    }
    if (pos != 0)
        return false;  // claimed position deeper than the proof path
    if (rightmost)
        *rightmost = right_edge;
    return h == root;
}

}  // namespace

bool verify_path(const MerkleProof& proof, const Hash32& root) {
    return chain_to_root(proof, root, nullptr);
}

bool verify_path_rightmost(const MerkleProof& proof, const Hash32& root) {
    bool rightmost = false;
    return chain_to_root(proof, root, &rightmost) && rightmost;
}

bool verify_absence(const AbsenceProof& proof, const std::string& term, const Hash32& root) {
    if (proof.below && proof.above) {
        if (!verify_path(*proof.below, root) || !verify_path(*proof.above, root))
            return false;
        if (proof.above->position != proof.below->position + 1)
            return false;
        return proof.below->term < term && term < proof.above->term;
    }
    if (proof.above) {  // query before the first leaf
        return proof.above->position == 0 && verify_path(*proof.above, root) &&
               term < proof.above->term;
    }
    if (proof.below) {  // query after the last leaf
        return verify_path_rightmost(*proof.below, root) && proof.below->term < term;
    }
    return false;
}

Digest sign_digest(const Hash32& root, std::uint64_t epoch, const Hash32& params_fingerprint,
                   const sig::SigningKey& key) {
    Digest digest;
    digest.root = root;
    digest.epoch = epoch;
    digest.params_fingerprint = params_fingerprint;
    std::vector<std::uint8_t> msg;
    msg.insert(msg.end(), {'A', 'W', 'C', 'D'});
    msg.insert(msg.end(), root.begin(), root.end());
    for (int i = 0; i < 8; ++i)
        msg.push_back(static_cast<std::uint8_t>(epoch >> (56 - 8 * i)));
    msg.insert(msg.end(), params_fingerprint.begin(), params_fingerprint.end());
    digest.signature = sig::sign(key, msg);
    return digest;
}

bool verify_digest(const Digest& digest, const sig::VerifyKey& key) {
    std::vector<std::uint8_t> msg;
    msg.insert(msg.end(), {'A', 'W', 'C', 'D'});
    msg.insert(msg.end(), digest.root.begin(), digest.root.end());
    for (int i = 0; i < 8; ++i)
        msg.push_back(static_cast<std::uint8_t>(digest.epoch >> (56 - 8 * i)));
    msg.insert(msg.end(), digest.params_fingerprint.begin(), digest.params_fingerprint.end());
    return sig::verify(key, msg, digest.signature);
}

}  // namespace awc
