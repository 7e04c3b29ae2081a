// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/pairing.hpp"

#include <memory>
#include <random>

#include "awc/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace awc;
using namespace awc::detail;

namespace {

Fq fqc(Limbs l) {
    return Fq::from_canonical(l);
}

Fq2 fq2c(Limbs re, Limbs im) {
    return {fqc(re), fqc(im)};
}

Fq2 rand_fq2(std::mt19937_64& rng) {
    auto limb = [&] {
        Limbs l{rng(), rng(), rng(), rng() & 0x0fffffffffffffffULL};
        return Fq::from_canonical(l);  // < q by masking enough top bits
    };
    return {limb(), limb()};
}

Fq12 rand_fq12(std::mt19937_64& rng) {
    return {{rand_fq2(rng), rand_fq2(rng), rand_fq2(rng)},
            {rand_fq2(rng), rand_fq2(rng), rand_fq2(rng)}};
}

Fq12 pow_limbs(const Fq12& x, const Limbs& e) {
    Fq12 base = x;
    Fq12 acc = Fq12::one();
    for (int limb = 0; limb < 4; ++limb) {
        u64 word = e[static_cast<std::size_t>(limb)];
        for (int bit = 0; bit < 64; ++bit) {
            if (word & 1)
                acc *= base;
            base = base.square();
            word >>= 1;
        }
    }
    return acc;
}

RandomSource seeded_random(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](std::span<std::uint8_t> out) {
        for (auto& b : out)
            b = static_cast<std::uint8_t>((*rng)());
    };
}

}  // namespace

TEST_CASE("fq2/fq6/fq12 field axioms") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Fq12 a = rand_fq12(rng);
        Fq12 b = rand_fq12(rng);
        Fq12 c = rand_fq12(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * Fq12::one() == a);
        if (!a.is_zero())
            CHECK(a * a.inverse() == Fq12::one());
        CHECK(a.square() == a * a);
    }
    Fq2 x{Fq::from_u64(3), Fq::from_u64(5)};
    CHECK(x * x.inverse() == Fq2::one());
    CHECK(x.square() == x * x);
    Fq6 y{x, x.square(), x + x};
    CHECK(y * y.inverse() == Fq6::one());
}

TEST_CASE("fq12 sparse multiplication matches full multiplication") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        Fq12 f = rand_fq12(rng);
        Fq2 s00 = rand_fq2(rng);
        Fq2 s10 = rand_fq2(rng);
        Fq2 s11 = rand_fq2(rng);
        Fq12 sparse{{s00, Fq2::zero(), Fq2::zero()}, {s10, s11, Fq2::zero()}};
        CHECK(f.mul_by_034(s00, s10, s11) == f * sparse);
    }
}

TEST_CASE("frobenius equals q-power map") {
    std::mt19937_64 rng(13);
    Fq12 x = rand_fq12(rng);
    CHECK(x.frobenius(1) == pow_limbs(x, FqParams::MOD));
    CHECK(x.frobenius(2) == x.frobenius(1).frobenius(1));
    CHECK(x.frobenius(3) == x.frobenius(2).frobenius(1));
    Fq12 t = x;
    for (int i = 0; i < 12; ++i)
        t = t.frobenius(1);
    CHECK(t == x);
}

TEST_CASE("fq2 sqrt") {
    std::mt19937_64 rng(14);
    int squares = 0;
    for (int i = 0; i < 40; ++i) {
        Fq2 x = rand_fq2(rng);
        Fq2 sq = x.square();
        auto s = sq.sqrt();
        REQUIRE(s.has_value());
        CHECK((*s == x || *s == -x));
        ++squares;
    }
    CHECK(squares == 40);
}

TEST_CASE("curve group laws and golden multiples") {
    const G1Affine& g1 = g1_generator();
    const G2Affine& g2 = g2_generator();
    CHECK(g1_on_curve(g1));
    CHECK(g2_on_curve(g2));
    CHECK(g2_in_subgroup(g2));

    // [r]g = identity
    CHECK(G1Jac::from_affine(g1).mul(FrParams::MOD).is_identity());
    CHECK(G2Jac::from_affine(g2).mul(FrParams::MOD).is_identity());

    G1Affine g1_5 = g1_mul(g1, FieldElement::from_u64(5));
    CHECK(g1_5.x == fqc({0xe849a8a7fa163fa9ULL, 0x62e4ded88953a39cULL, 0x66bc0204762b7743ULL,
                         0x17c139df0efee0f7ULL}));
    CHECK(g1_5.y == fqc({0x3ffc5718c6d4cc7cULL, 0x0baa9258e0b95927ULL, 0x4764a357af8a9fe7ULL,
                         0x01e0559bacb16066ULL}));

    // (r-1)g = -g
    FieldElement r_minus_1 = FieldElement::zero() - FieldElement::one();
    G1Affine neg = g1_mul(g1, r_minus_1);
    CHECK(neg.x == g1.x);
    CHECK(neg.y == -g1.y);

    G2Affine g2_5 = g2_mul(g2, FieldElement::from_u64(5));
    CHECK(g2_5.x == fq2c({0x13708390a06410d8ULL, 0xf5db5df8ae8a9a91ULL, 0xf4e5773c603948eaULL,
                          0x2e539c423b302d13ULL},
                         {0x0671e510e428b2a1ULL, 0x57b57ac5af3759d5ULL, 0x9d1c1208dee11624ULL,
                          0x0a09ccf561b55fd9ULL}));
    CHECK(g2_5.y == fq2c({0x9d46d394fb6f6bf6ULL, 0xeb23044ccf535ad4ULL, 0x7a2fec063cb7b6e5ULL,
                          0x2f8d9f9ab83727c7ULL},
                         {0xd21414011cfcc763ULL, 0xc1d657fee4214057ULL, 0xe4eebd0d78c91c1bULL,
                          0x19b763513924a736ULL}));

    // mixed/full addition consistency: 5g = 4g + g = 2g + 3g
    G1Affine g1_2 = g1_mul(g1, FieldElement::from_u64(2));
    G1Affine g1_3 = g1_mul(g1, FieldElement::from_u64(3));
    G1Affine g1_4 = g1_mul(g1, FieldElement::from_u64(4));
    CHECK(g1_add(g1_4, g1) == g1_5);
    CHECK(g1_add(g1_2, g1_3) == g1_5);
    CHECK(g1_add(g1_5, G1Affine::identity()) == g1_5);
}

TEST_CASE("point serialization round-trips") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 20; ++i) {
        FieldElement k = testing::random_field(rng);
        G1Affine p = g1_mul(g1_generator(), k);
        std::array<std::uint8_t, 32> buf;
        g1_to_bytes(p, buf);
        G1Affine back;
        REQUIRE(g1_from_bytes(buf, back));
        CHECK(back == p);

        G2Affine q = g2_mul(g2_generator(), k);
        std::array<std::uint8_t, 64> buf2;
        g2_to_bytes(q, buf2);
        G2Affine back2;
        REQUIRE(g2_from_bytes(buf2, back2, true));
        CHECK(back2 == q);
    }
    // identity round-trip
    std::array<std::uint8_t, 32> buf;
    g1_to_bytes(G1Affine::identity(), buf);
    G1Affine back;
    REQUIRE(g1_from_bytes(buf, back));
    CHECK(back.infinity);
    // non-canonical x (>= q) rejected
    buf.fill(0xff);
    buf[0] = 0x3f;
    CHECK_FALSE(g1_from_bytes(buf, back));
}

TEST_CASE("target element serialization round-trips") {
    std::mt19937_64 rng(19);
    TargetElement e = pair(g1_mul(g1_generator(), testing::random_field(rng)),
                           g2_mul(g2_generator(), testing::random_field(rng)));
    std::array<std::uint8_t, 384> buf;
    gt_to_bytes(e, buf);
    TargetElement back;
    REQUIRE(gt_from_bytes(buf, back));
    CHECK(back == e);
    buf.fill(0xff);
    CHECK_FALSE(gt_from_bytes(buf, back));
}

TEST_CASE("g2 decoding rejects points outside the r-torsion") {
    // find a twist point by x-search; overwhelmingly it is not in the subgroup
    Fq x = Fq::from_u64(1);
    for (int i = 0; i < 1000; ++i) {
        Fq2 xx{x, Fq::zero()};
        auto y = (xx.square() * xx + g2_curve_b()).sqrt();
        if (y) {
            G2Affine p{xx, *y, false};
            REQUIRE(g2_on_curve(p));
            if (!g2_in_subgroup(p)) {
                std::array<std::uint8_t, 64> buf;
                g2_to_bytes(p, buf);
                G2Affine back;
                CHECK(g2_from_bytes(buf, back, false));
                CHECK_FALSE(g2_from_bytes(buf, back, true));
                return;
            }
        }
        x += Fq::one();
    }
    FAIL("no off-subgroup twist point found");
}

TEST_CASE("pairing golden value e(g1, g2)") {
    TargetElement e = pair(g1_generator(), g2_generator());
    Fq12 golden{
        {fq2c({0x8fca81000db9a1f5ULL, 0x1bf7f61d72631e26ULL, 0x510cd1707e8856f7ULL, 0x12c70e90e12b7874ULL},
              {0xb0552990967d4704ULL, 0xdeaf3f12aa31f28cULL, 0x6bc2f2ea2b897394ULL, 0x084f330485b09e86ULL}),
         fq2c({0x96b819a358d34bdeULL, 0xbc27fdd375e3605fULL, 0xac9326b9558380e0ULL, 0x0e841c2ac18a4003ULL},
              {0xf6b5104c47c8c5d8ULL, 0x60224ee5ae15e66aULL, 0xeffa1938c754fe3cULL, 0x2067586885c3318eULL}),
         fq2c({0xbdd02236e14b3636ULL, 0x86302996919d4bf4ULL, 0x409c4a394bc54268ULL, 0x01676555de427abcULL},
              {0x95e3594468f222c4ULL, 0xffc8747ea13e72daULL, 0x72d86df88674c270ULL, 0x2b03614464f04dd7ULL})},
        {fq2c({0x30c866276c565909ULL, 0xaf25d7859cfbc12cULL, 0x38fb30ddc8ac3bf0ULL, 0x2c53748bcd21a7c0ULL},
              {0xb2ab862411536104ULL, 0x669c026360e37cc5ULL, 0x6e710bbfbd2fd922ULL, 0x27ed208e7a0b55aeULL}),
         fq2c({0x9d762b47edb3b54aULL, 0x17411fa48dba8d49ULL, 0xac462173d31d3d61ULL, 0x1ad9db1937fd72f4ULL},
              {0x64889c79fc038ee3ULL, 0x2b6efae421583875ULL, 0x2532c7c493d8e072ULL, 0x279db296f9d47929ULL}),
         fq2c({0x17f0f6d08745a069ULL, 0x0ba4c70c94b29b5fULL, 0x029bd441d77c221fULL, 0x0dc26f240656bbe2ULL},
              {0x63729f5257628417ULL, 0xd6cc3bda6c4d5376ULL, 0x44d0f110405d3856ULL, 0x108c19d15f9446f7ULL})}};
    CHECK(e == golden);
    CHECK_FALSE(e.is_one());
}

TEST_CASE("pairing golden value e(2g1, 3g2) and bilinearity") {
    G1Affine p2 = g1_mul(g1_generator(), FieldElement::from_u64(2));
    G2Affine q3 = g2_mul(g2_generator(), FieldElement::from_u64(3));
    TargetElement e23 = pair(p2, q3);
    TargetElement e6 = pair(g1_generator(), g2_generator()).pow(6);
    CHECK(e23 == e6);

    std::mt19937_64 rng(16);
    for (int i = 0; i < 4; ++i) {
        FieldElement a = testing::random_field(rng);
        FieldElement b = testing::random_field(rng);
        TargetElement lhs = pair(g1_mul(g1_generator(), a), g2_mul(g2_generator(), b));
        TargetElement rhs = pow_limbs(pair(g1_generator(), g2_generator()), (a * b).to_canonical());
        CHECK(lhs == rhs);
    }

    // identity edge cases
    CHECK(pair(G1Affine::identity(), g2_generator()).is_one());
    CHECK(pair(g1_generator(), G2Affine::identity()).is_one());
}

TEST_CASE("multi_pair equals product of pairings") {
    std::mt19937_64 rng(17);
    std::vector<std::pair<G1Element, G2Element>> pairs;
    TargetElement expect = TargetElement::one();
    for (int i = 0; i < 3; ++i) {
        G1Element p = g1_mul(g1_generator(), testing::random_field(rng));
        G2Element q = g2_mul(g2_generator(), testing::random_field(rng));
        pairs.emplace_back(p, q);
        expect *= pair(p, q);
    }
    CHECK(multi_pair(pairs) == expect);
}

TEST_CASE("keygen ladder and commitments") {
    auto rng = seeded_random(99);
    KeyMaterial km = keygen(8, rng);
    CHECK(km.pp.powers_g1.size() == 9);
    CHECK(km.pp.powers_g2.size() == 9);
    CHECK(km.pp.powers_g1[0] == g1_generator());
    CHECK(km.pp.powers_g2[0] == g2_generator());

    // ladder really is g^(s^k)
    FieldElement s = km.sk.s;
    FieldElement sk = FieldElement::one();
    for (std::size_t k = 0; k < 9; ++k) {
        CHECK(km.pp.powers_g1[k] == g1_mul(g1_generator(), sk));
        sk *= s;
    }

    std::size_t samples[] = {1, 3, 8};
    CHECK(validate_params(km.pp, samples));

    // commit equals trapdoor evaluation
    std::mt19937_64 prng(18);
    Polynomial poly = testing::random_poly(prng, 8);
    G1Element c = commit_g1(poly, km.pp);
    CHECK(c == g1_mul(g1_generator(), poly_eval(poly, s)));
    G2Element c2 = commit_g2(poly, km.pp);
    CHECK(c2 == g2_mul(g2_generator(), poly_eval(poly, s)));

    // commit is linear
    Polynomial pa = testing::random_poly(prng, 6);
    Polynomial pb = testing::random_poly(prng, 8);
    G1Element ca = commit_g1(pa, km.pp);
    G1Element cb = commit_g1(pb, km.pp);
    CHECK(commit_g1(poly_add(pa, pb), km.pp) == g1_add(ca, cb));

    // degree limit enforced
    Polynomial big(10, FieldElement::one());
    CHECK_THROWS_AS(commit_g1(big, km.pp), DegreeExceedsParams);

    // truncation keeps fingerprint and prefix
    PublicParams trunc = truncate_params(km.pp, 3);
    CHECK(trunc.powers_g1.size() == 4);
    CHECK(trunc.fingerprint == km.pp.fingerprint);
    CHECK(trunc.n == km.pp.n);

    // msm path with more than 256 points agrees with the trapdoor
    KeyMaterial big_km = keygen(300, rng);
    Polynomial big_poly(301);
    for (auto& c3 : big_poly)
        c3 = testing::random_field(prng);
    big_poly = poly_trim(std::move(big_poly));
    G1Element cbig = commit_g1(big_poly, big_km.pp);
    CHECK(cbig == g1_mul(g1_generator(), poly_eval(big_poly, big_km.sk.s)));
}
