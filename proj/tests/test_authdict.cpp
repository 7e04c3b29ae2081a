// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/authdict.hpp"

#include <openssl/evp.h>

#include <random>

#include "awc/errors.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace awc;

namespace {

G1Element dummy_acc(std::uint64_t k) {
    return g1_mul(detail::g1_generator(), FieldElement::from_u64(k));
}

std::vector<MerkleLeaf> toy_leaves() {
    std::vector<MerkleLeaf> leaves;
    std::uint64_t k = 1;
    for (const char* term : testing::Toy::kTerms)
        leaves.push_back({term, dummy_acc(k++)});
    return leaves;
}

Hash32 h2(const Hash32& a, const Hash32& b) {
    Hash32 out;
    unsigned int len = 32;
    std::uint8_t buf[65];
    buf[0] = 0x01;
    std::copy(a.begin(), a.end(), buf + 1);
    std::copy(b.begin(), b.end(), buf + 33);
    EVP_Digest(buf, sizeof(buf), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

RandomSource test_random(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](std::span<std::uint8_t> out) {
        for (auto& b : out)
            b = static_cast<std::uint8_t>((*rng)());
    };
}

}  // namespace

TEST_CASE("eight-leaf tree shape and the worked root equation") {
    MerkleTree tree = MerkleTree::build(toy_leaves());
    CHECK(tree.leaf_count() == 8);
    CHECK(tree.height() == 3);

    // "disk" is leaf 1 in sorted order; its proof has exactly three siblings
    MerkleProof proof = tree.prove_membership("disk");
    CHECK(proof.position == 1);
    REQUIRE(proof.siblings.size() == 3);
    CHECK(verify_path(proof, tree.root()));

    // recompute the chain by hand: root = h( h( h(h0, leaf1), h23 ), h47 )
    Hash32 leaf1 = MerkleTree::leaf_hash({proof.term, proof.acc});
    Hash32 manual = h2(h2(h2(proof.siblings[0], leaf1), proof.siblings[1]), proof.siblings[2]);
    CHECK(manual == tree.root());
}

TEST_CASE("root is order independent and duplicate terms are rejected") {
    auto leaves = toy_leaves();
    MerkleTree tree = MerkleTree::build(leaves);
    std::mt19937_64 rng(1);
    std::shuffle(leaves.begin(), leaves.end(), rng);
    MerkleTree tree2 = MerkleTree::build(leaves);
    CHECK(tree.root() == tree2.root());

    leaves.push_back({"disk", dummy_acc(99)});
    CHECK_THROWS_AS(MerkleTree::build(leaves), FormatError);
    CHECK_THROWS_AS(MerkleTree::build({}), FormatError);
}

TEST_CASE("single leaf tree") {
    MerkleTree tree = MerkleTree::build({{"only", dummy_acc(1)}});
    CHECK(tree.root() == MerkleTree::leaf_hash({"only", dummy_acc(1)}));
    MerkleProof proof = tree.prove_membership("only");
    CHECK(proof.siblings.empty());
    CHECK(verify_path(proof, tree.root()));
    CHECK(verify_path_rightmost(proof, tree.root()));
}

TEST_CASE("odd leaf counts still verify everywhere") {
    for (std::size_t m : {2u, 3u, 5u, 6u, 7u, 9u}) {
        std::vector<MerkleLeaf> leaves;
        for (std::size_t i = 0; i < m; ++i)
            leaves.push_back({"term" + std::to_string(i), dummy_acc(i + 1)});
        MerkleTree tree = MerkleTree::build(leaves);
        for (const auto& leaf : tree.leaves()) {
            MerkleProof proof = tree.prove_membership(leaf.term);
            CHECK(verify_path(proof, tree.root()));
        }
        // rightmost structural check: true only for the last leaf
        for (std::size_t i = 0; i < m; ++i) {
            MerkleProof proof = tree.prove_membership(tree.leaves()[i].term);
            CHECK(verify_path_rightmost(proof, tree.root()) == (i == m - 1));
        }
    }
}

TEST_CASE("absence proofs") {
    MerkleTree tree = MerkleTree::build(toy_leaves());

    // between mouse and port
    AbsenceProof net = tree.prove_absence("network");
    REQUIRE(net.below.has_value());
    REQUIRE(net.above.has_value());
    CHECK(net.below->term == "mouse");
    CHECK(net.above->term == "port");
    CHECK(verify_absence(net, "network", tree.root()));

    // wrong-side bracket rejected
    CHECK_FALSE(verify_absence(net, "ap", tree.root()));
    CHECK_FALSE(verify_absence(net, "zebra", tree.root()));
    // absence proof of a present term never validates
    CHECK_FALSE(verify_absence(net, "port", tree.root()));
    CHECK_FALSE(verify_absence(net, "mouse", tree.root()));

    // before the first leaf
    AbsenceProof first = tree.prove_absence("aaa");
    CHECK_FALSE(first.below.has_value());
    REQUIRE(first.above.has_value());
    CHECK(first.above->position == 0);
    CHECK(verify_absence(first, "aaa", tree.root()));

    // after the last leaf
    AbsenceProof last = tree.prove_absence("zzz");
    REQUIRE(last.below.has_value());
    CHECK_FALSE(last.above.has_value());
    CHECK(verify_absence(last, "zzz", tree.root()));

    // boundary forgery: claiming an interior leaf is the last one must fail
    AbsenceProof forged;
    forged.below = tree.prove_membership("mouse");
    CHECK_FALSE(verify_absence(forged, "network", tree.root()));

    // non-adjacent bracketing must fail
    AbsenceProof wide;
    wide.below = tree.prove_membership("memory");
    wide.above = tree.prove_membership("port");
    CHECK_FALSE(verify_absence(wide, "network", tree.root()));

    CHECK_THROWS_AS(tree.prove_absence("disk"), FormatError);
    CHECK_THROWS_AS(tree.prove_membership("network"), FormatError);
}

TEST_CASE("single-bit mutations of a proof are rejected") {
    MerkleTree tree = MerkleTree::build(toy_leaves());
    MerkleProof proof = tree.prove_membership("memory");
    REQUIRE(verify_path(proof, tree.root()));

    for (std::size_t s = 0; s < proof.siblings.size(); ++s) {
        for (std::size_t byte = 0; byte < 32; ++byte) {
            for (int bit = 0; bit < 8; ++bit) {
                MerkleProof mutated = proof;
                mutated.siblings[s][byte] ^= static_cast<std::uint8_t>(1 << bit);
                CHECK_FALSE(verify_path(mutated, tree.root()));
            }
        }
    }
    MerkleProof wrong_pos = proof;
    wrong_pos.position ^= 1;
    CHECK_FALSE(verify_path(wrong_pos, tree.root()));
    MerkleProof wrong_term = proof;
    wrong_term.term = "memoryx";
    CHECK_FALSE(verify_path(wrong_term, tree.root()));
    MerkleProof wrong_acc = proof;
    wrong_acc.acc = dummy_acc(4242);
    CHECK_FALSE(verify_path(wrong_acc, tree.root()));
}

TEST_CASE("update_leaf recomputes one path") {
    auto leaves = toy_leaves();
    MerkleTree tree = MerkleTree::build(leaves);
    MerkleProof old_proof = tree.prove_membership("ram");

    MerkleTree updated = tree;
    updated.update_leaf("ram", dummy_acc(777));

    // equals a fresh rebuild
    for (auto& leaf : leaves)
        if (leaf.term == "ram")
            leaf.acc = dummy_acc(777);
    MerkleTree rebuilt = MerkleTree::build(leaves);
    CHECK(updated.root() == rebuilt.root());
    CHECK(updated.root() != tree.root());

    // idempotent on same value
    MerkleTree again = updated;
    again.update_leaf("ram", dummy_acc(777));
    CHECK(again.root() == updated.root());

    // old proof rejects under the new root
    CHECK_FALSE(verify_path(old_proof, updated.root()));
    CHECK(verify_path(updated.prove_membership("ram"), updated.root()));

    CHECK_THROWS_AS(updated.update_leaf("nope", dummy_acc(1)), FormatError);
}

TEST_CASE("digest signing") {
    RandomSource rng = test_random(7);
    sig::SigningKey key = sig::generate(rng);
    sig::VerifyKey vk = sig::verify_key_of(key);

    MerkleTree tree = MerkleTree::build(toy_leaves());
    Hash32 fp{};
    fp[0] = 0xab;
    Digest digest = sign_digest(tree.root(), 3, fp, key);
    CHECK(verify_digest(digest, vk));

    Digest wrong_root = digest;
    wrong_root.root[5] ^= 1;
    CHECK_FALSE(verify_digest(wrong_root, vk));
    Digest wrong_epoch = digest;
    wrong_epoch.epoch = 4;
    CHECK_FALSE(verify_digest(wrong_epoch, vk));
    Digest wrong_fp = digest;
    wrong_fp.params_fingerprint[0] ^= 1;
    CHECK_FALSE(verify_digest(wrong_fp, vk));

    sig::VerifyKey other = sig::verify_key_of(sig::generate(rng));
    CHECK_FALSE(verify_digest(digest, other));
}
