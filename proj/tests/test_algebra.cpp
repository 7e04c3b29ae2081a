// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/algebra.hpp"

#include <random>

#include "awc/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace awc;

namespace {

FieldElement fe(std::uint64_t x) {
    return FieldElement::from_u64(x);
}

Polynomial poly(std::initializer_list<std::uint64_t> coeffs) {
    Polynomial p;
    for (auto c : coeffs)
        p.push_back(fe(c));
    return poly_trim(std::move(p));
}

std::vector<FieldElement> roots(std::initializer_list<std::uint64_t> xs) {
    std::vector<FieldElement> out;
    for (auto x : xs)
        out.push_back(fe(x));
    return out;
}

Polynomial mul_reference(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.size() + b.size() - 1, FieldElement::zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return poly_trim(std::move(out));
}

}  // namespace

TEST_CASE("field element arithmetic basics") {
    CHECK(fe(3) + fe(4) == fe(7));
    CHECK(fe(10) - fe(4) == fe(6));
    CHECK(fe(3) * fe(4) == fe(12));
    CHECK((fe(0) - fe(1)) + fe(1) == fe(0));
    CHECK(fe(7) * fe(7).inverse() == fe(1));
    CHECK(FieldElement::cmp(fe(3), fe(4)) < 0);
    CHECK(FieldElement::cmp(fe(4), fe(4)) == 0);

    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        FieldElement a = testing::random_field(rng);
        FieldElement b = testing::random_nonzero(rng);
        CHECK(a * b * b.inverse() == a);
        std::array<std::uint8_t, 32> bytes;
        a.to_bytes(bytes);
        FieldElement back;
        REQUIRE(FieldElement::from_bytes(std::span<const std::uint8_t, 32>(bytes), back));
        CHECK(back == a);
    }
}

TEST_CASE("field rejects non-canonical encodings") {
    // the modulus itself must not decode
    std::array<std::uint8_t, 32> bytes{};
    // r in big-endian
    const std::array<std::uint8_t, 32> modulus = {
        0x30, 0x64, 0x4e, 0x72, 0xe1, 0x31, 0xa0, 0x29, 0xb8, 0x50, 0x45,
        0xb6, 0x81, 0x81, 0x58, 0x5d, 0x28, 0x33, 0xe8, 0x48, 0x79, 0xb9,
        0x70, 0x91, 0x43, 0xe1, 0xf5, 0x93, 0xf0, 0x00, 0x00, 0x01};
    bytes = modulus;
    FieldElement out;
    CHECK_FALSE(FieldElement::from_bytes(std::span<const std::uint8_t, 32>(bytes), out));
    bytes.fill(0xff);
    CHECK_FALSE(FieldElement::from_bytes(std::span<const std::uint8_t, 32>(bytes), out));
}

TEST_CASE("poly_from_roots golden values") {
    CHECK(poly_from_roots(roots({1, 7})) == poly({7, 8, 1}));
    CHECK(poly_from_roots(roots({})) == poly({1}));
    CHECK(poly_from_roots(roots({2, 4, 5, 6})) == poly({240, 268, 104, 17, 1}));
}

TEST_CASE("poly_from_roots evaluation property") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {1u, 2u, 17u, 100u, 512u}) {
        std::vector<FieldElement> rs(n);
        for (auto& r : rs)
            r = testing::random_field(rng);
        Polynomial p = poly_from_roots(rs);
        CHECK(p.size() == n + 1);
        CHECK(p.back() == fe(1));
        FieldElement x = testing::random_field(rng);
        FieldElement direct = fe(1);
        for (const auto& r : rs)
            direct *= x + r;
        CHECK(poly_eval(p, x) == direct);
    }
}

TEST_CASE("poly_eval basics") {
    CHECK(poly_eval(poly({7, 8, 1}), fe(1)) == fe(16));
    CHECK(poly_eval(poly({1}), fe(12345)) == fe(1));
    CHECK(poly_eval(poly({0}), fe(5)) == fe(0));
}

TEST_CASE("poly_mul golden and properties") {
    CHECK(poly_mul(poly({2, 1}), poly({4, 1})) == poly({8, 6, 1}));
    std::mt19937_64 rng(2);
    Polynomial a = testing::random_poly(rng, 40);
    CHECK(poly_mul(a, poly({1})) == a);
    CHECK(poly_mul(a, poly({0})) == poly({0}));

    auto ra = roots({1, 2, 3});
    auto rb = roots({4, 5});
    auto rall = roots({1, 2, 3, 4, 5});
    CHECK(poly_mul(poly_from_roots(ra), poly_from_roots(rb)) == poly_from_roots(rall));
}

TEST_CASE("poly_mul ntt path agrees with schoolbook") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 5; ++iter) {
        Polynomial a = testing::random_poly(rng, 300);
        Polynomial b = testing::random_poly(rng, 280);
        CHECK(poly_mul(a, b) == mul_reference(a, b));
    }
}

TEST_CASE("poly_divrem golden and properties") {
    auto [q1, r1] = poly_divrem(poly({8, 6, 1}), poly({2, 1}));
    CHECK(q1 == poly({4, 1}));
    CHECK(r1 == poly({0}));

    Polynomial a = poly({3, 1, 4, 1, 5});
    auto [q2, r2] = poly_divrem(a, a);
    CHECK(q2 == poly({1}));
    CHECK(r2 == poly({0}));

    auto [q3, r3] = poly_divrem(poly({1, 2}), poly({0, 0, 1}));
    CHECK(q3 == poly({0}));
    CHECK(r3 == poly({1, 2}));

    CHECK_THROWS_AS(poly_divrem(poly({1}), poly({0})), DivisionByZeroPoly);

    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 20; ++iter) {
        Polynomial x = testing::random_poly(rng, 50);
        Polynomial y = testing::random_nonzero_poly(rng, 20);
        auto [q, r] = poly_divrem(x, y);
        CHECK(poly_add(poly_mul(q, y), r) == x);
        CHECK(poly_degree(r) < poly_degree(y));
    }
}

TEST_CASE("poly_divrem newton path") {
    std::mt19937_64 rng(5);
    Polynomial a = testing::random_poly(rng, 700);
    Polynomial b = testing::random_nonzero_poly(rng, 350);
    while (poly_degree(b) < 100)
        b = testing::random_nonzero_poly(rng, 350);
    auto [q, r] = poly_divrem(a, b);
    CHECK(poly_add(poly_mul(q, b), r) == a);
    CHECK(poly_degree(r) < poly_degree(b));
}

TEST_CASE("multi_bezout identities") {
    // triple with pairwise common factors but trivial joint gcd
    std::vector<Polynomial> ps = {
        poly_from_roots(roots({2, 4, 5, 6})),
        poly_from_roots(roots({3, 5, 8, 9})),
        poly_from_roots(roots({4})),
    };
    BezoutResult res = multi_bezout(ps);
    CHECK(res.coprime());
    Polynomial sum = poly({0});
    for (std::size_t j = 0; j < ps.size(); ++j)
        sum = poly_add(sum, poly_mul(res.cofactors[j], ps[j]));
    CHECK(sum == poly({1}));

    // identical inputs share every root
    std::vector<Polynomial> same = {poly({1, 1}), poly({1, 1})};
    BezoutResult res2 = multi_bezout(same);
    CHECK_FALSE(res2.coprime());
    CHECK(res2.gcd == poly({1, 1}));
    Polynomial sum2 = poly({0});
    for (std::size_t j = 0; j < same.size(); ++j)
        sum2 = poly_add(sum2, poly_mul(res2.cofactors[j], same[j]));
    CHECK(sum2 == res2.gcd);

    // single already-monic constant
    std::vector<Polynomial> single = {poly({1})};
    BezoutResult res3 = multi_bezout(single);
    CHECK(res3.coprime());
    CHECK(res3.cofactors[0] == poly({1}));

    // single non-monic polynomial normalizes
    std::vector<Polynomial> nm = {poly({4, 2})};
    BezoutResult res4 = multi_bezout(nm);
    CHECK(res4.gcd.back() == fe(1));
    CHECK(poly_mul(res4.cofactors[0], nm[0]) == res4.gcd);
}

TEST_CASE("multi_bezout random families") {
    std::mt19937_64 rng(6);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t t = 2 + iter % 3;
        std::vector<Polynomial> ps;
        for (std::size_t j = 0; j < t; ++j)
            ps.push_back(testing::random_nonzero_poly(rng, 12));
        bool plant = iter % 2 == 0;
        if (plant) {
            Polynomial factor{testing::random_field(rng), fe(1)};
            for (auto& p : ps)
                p = poly_mul(p, factor);
        }
        BezoutResult res = multi_bezout(ps);
        Polynomial sum = poly({0});
        for (std::size_t j = 0; j < t; ++j)
            sum = poly_add(sum, poly_mul(res.cofactors[j], ps[j]));
        CHECK(sum == res.gcd);
        CHECK(res.gcd.back() == fe(1));
        if (plant)
            CHECK_FALSE(res.coprime());
    }
}

TEST_CASE("coprime_cofactors agrees with the bezout identity") {
    std::vector<std::vector<FieldElement>> sets = {
        roots({2, 4, 5, 6}),
        roots({3, 5, 8, 9}),
        roots({4}),
    };
    auto cof = coprime_cofactors(sets);
    Polynomial sum = poly({0});
    int max_deg = 0;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        sum = poly_add(sum, poly_mul(cof[j], poly_from_roots(sets[j])));
        max_deg = std::max(max_deg, poly_degree(cof[j]));
    }
    CHECK(sum == poly({1}));
    CHECK(max_deg <= 4);
}

TEST_CASE("coprime_cofactors rejects shared roots") {
    std::vector<std::vector<FieldElement>> sets = {
        roots({1, 2, 7}),
        roots({3, 7}),
        roots({7, 9}),
    };
    CHECK_THROWS_AS(coprime_cofactors(sets), GcdNotOne);
}

TEST_CASE("coprime_cofactors handles empty residual and large sets") {
    std::vector<std::vector<FieldElement>> sets = {roots({1, 2}), {}, roots({5})};
    auto cof = coprime_cofactors(sets);
    CHECK(cof[1] == poly({1}));
    CHECK(cof[0] == poly({0}));
    CHECK(cof[2] == poly({0}));

    std::mt19937_64 rng(7);
    // two large disjoint sets exercise the ntt/newton path end to end
    std::vector<std::vector<FieldElement>> big(2);
    for (int i = 0; i < 400; ++i)
        big[0].push_back(fe(static_cast<std::uint64_t>(2 * i + 2)));
    for (int i = 0; i < 380; ++i)
        big[1].push_back(fe(static_cast<std::uint64_t>(2 * i + 3)));
    auto cof2 = coprime_cofactors(big);
    Polynomial sum = poly({0});
    for (std::size_t j = 0; j < 2; ++j)
        sum = poly_add(sum, poly_mul(cof2[j], poly_from_roots(big[j])));
    CHECK(sum == poly({1}));
    CHECK(poly_degree(cof2[0]) < 400);
    CHECK(poly_degree(cof2[1]) < 400);
}

TEST_CASE("batch_inverse") {
    std::mt19937_64 rng(8);
    std::vector<FieldElement> xs(33);
    for (auto& x : xs)
        x = testing::random_field(rng);
    xs[7] = fe(0);
    std::vector<FieldElement> expect = xs;
    for (auto& x : expect)
        x = x.inverse();
    expect[7] = fe(0);
    batch_inverse(xs);
    CHECK(xs == expect);
}

TEST_CASE("hash_to_field") {
    std::vector<std::uint8_t> empty;
    FieldElement h = hash_to_field(empty);
    // sha256("") reduced mod r, evaluated once and pinned
    FieldElement golden = FieldElement::from_canonical(
        {0x950dc2cbb852b851ULL, 0x86dea0c27db5d107ULL, 0xb9baddee936a57afULL,
         0x221f8a7714359b6dULL});
    CHECK(h == golden);
    CHECK_FALSE(h.is_zero());

    std::vector<std::uint8_t> a = {1, 2, 3};
    std::vector<std::uint8_t> b = {1, 2, 4};
    CHECK(hash_to_field(a) == hash_to_field(a));
    CHECK(hash_to_field(a) != hash_to_field(b));
}
