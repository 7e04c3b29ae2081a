// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/detail/tower.hpp"

namespace awc::detail {

namespace {

Fq fq(const Limbs& canonical) {
    return Fq::from_canonical(canonical);
}

Fq2 fq2(const Limbs& re, const Limbs& im) {
    return {fq(re), fq(im)};
}

struct FrobTables {
    Fq2 fq6_c1[4];
    Fq2 fq6_c2[4];
    Fq2 fq12_c1[4];
    FrobTables() {
        fq6_c1[1] = fq2({0x99e39557176f553dULL, 0xb78cc310c2c3330cULL, 0x4c0bec3cf559b143ULL, 0x2fb347984f7911f7ULL},
                        {0x1665d51c640fcba2ULL, 0x32ae2a1d0b7c9dceULL, 0x4ba4cc8bd75a0794ULL, 0x16c9e55061ebae20ULL});
        fq6_c2[1] = fq2({0x848a1f55921ea762ULL, 0xd33365f7be94ec72ULL, 0x80f3c0b75a181e84ULL, 0x05b54f5e64eea801ULL},
                        {0xc13b4711cd2b8126ULL, 0x3685d2ea1bdec763ULL, 0x9f3a80b03b0b1c92ULL, 0x2c145edbe7fd8aeeULL});
        fq12_c1[1] = fq2({0xd60b35dadcc9e470ULL, 0x5c521e08292f2176ULL, 0xe8b99fdd76e68b60ULL, 0x1284b71c2865a7dfULL},
                         {0xca5cf05f80f362acULL, 0x747992778eeec7e5ULL, 0xa6327cfe12150b8eULL, 0x246996f3b4fae7e6ULL});
        fq6_c1[2] = fq2({0xe4bd44e5607cfd48ULL, 0xc28f069fbb966e3dULL, 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL},
                        {0, 0, 0, 0});
        fq6_c2[2] = fq2({0x5763473177fffffeULL, 0xd4f263f1acdb5c4fULL, 0x59e26bcea0d48bacULL, 0x0000000000000000ULL},
                        {0, 0, 0, 0});
        fq12_c1[2] = fq2({0xe4bd44e5607cfd49ULL, 0xc28f069fbb966e3dULL, 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL},
                         {0, 0, 0, 0});
        fq6_c1[3] = fq2({0x7b746ee87bdcfb6dULL, 0x805ffd3d5d6942d3ULL, 0xbaff1c77959f25acULL, 0x0856e078b755ef0aULL},
                        {0x380cab2baaa586deULL, 0x0fdf31bf98ff2631ULL, 0xa9f30e6dec26094fULL, 0x04f1de41b3d1766fULL});
        fq6_c2[3] = fq2({0x0e1a92bc3ccbf066ULL, 0xe633094575b06bcbULL, 0x19bee0f7b5b2444eULL, 0x0bc58c6611c08dabULL},
                        {0x5fe3ed9d730c239fULL, 0xa44a9e08737f96e5ULL, 0xfeb0f6ef0cd21d04ULL, 0x23d5e999e1910a12ULL});
        fq12_c1[3] = fq2({0xe86f7d391ed4a67fULL, 0x894cb38dbe55d24aULL, 0xefe9608cd0acaa90ULL, 0x19dc81cfcc82e4bbULL},
                         {0x7694aa2bf4c0c101ULL, 0x7f03a5e397d439ecULL, 0x06cbeee33576139dULL, 0x00abf8b60be77d73ULL});
    }
};

const FrobTables& tables() {
    static const FrobTables t;
    return t;
}

Fq2 frob2(const Fq2& x, int k) {
    return (k & 1) ? x.conjugate() : x;
}

// legendre exponent (q-1)/2 and sqrt exponent (q+1)/4, derived from the modulus
struct FqExponents {
    Limbs half;      // (q-1)/2
    Limbs quarter;   // (q+1)/4
    FqExponents() {
        Limbs m = FqParams::MOD;
        // (q-1)/2: q is odd so just shift (q-1)
        Limbs q1 = m;
        q1[0] -= 1;
        for (int i = 0; i < 4; ++i) {
            half[static_cast<std::size_t>(i)] = q1[static_cast<std::size_t>(i)] >> 1;
            if (i < 3)
                half[static_cast<std::size_t>(i)] |= q1[static_cast<std::size_t>(i + 1)] << 63;
        }
        // (q+1)/4
        Limbs q2 = m;
        q2[0] += 1;  // no carry: low limb of q ends in ...47
        for (int i = 0; i < 4; ++i) {
            quarter[static_cast<std::size_t>(i)] = q2[static_cast<std::size_t>(i)] >> 2;
            if (i < 3)
                quarter[static_cast<std::size_t>(i)] |= q2[static_cast<std::size_t>(i + 1)] << 62;
        }
    }
};

const FqExponents& fq_exponents() {
    static const FqExponents e;
    return e;
}

bool fq_is_square(const Fq& x) {
    if (x.is_zero())
        return true;
    return x.pow(fq_exponents().half) == Fq::one();
}

}  // namespace

std::optional<Fq> fq_sqrt(const Fq& x) {
    if (x.is_zero())
        return Fq::zero();
    Fq s = x.pow(fq_exponents().quarter);
    if (s.square() == x)
        return s;
    return std::nullopt;
}

Fq2 Fq2::pow(const Limbs& e) const {
    Fq2 base = *this;
    Fq2 acc = Fq2::one();
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

std::optional<Fq2> Fq2::sqrt() const {
    if (is_zero())
        return Fq2::zero();
    if (c1.is_zero()) {
        if (auto s = fq_sqrt(c0))
            return Fq2{*s, Fq::zero()};
        // c0 is a nonresidue, so -c0 is a residue and sqrt is purely imaginary
        if (auto s = fq_sqrt(-c0))
            return Fq2{Fq::zero(), *s};
        return std::nullopt;
    }
    // complex method: norm = c0^2 + c1^2 must be a square in Fq
    Fq norm = c0.square() + c1.square();
    auto alpha = fq_sqrt(norm);
    if (!alpha)
        return std::nullopt;
    Fq two_inv = Fq::from_u64(2).inverse();
    Fq delta = (c0 + *alpha) * two_inv;
    if (!fq_is_square(delta))
        delta = (c0 - *alpha) * two_inv;
    auto x0 = fq_sqrt(delta);
    if (!x0)
        return std::nullopt;
    Fq x1 = c1 * two_inv * x0->inverse();
    Fq2 cand{*x0, x1};
    if (cand.square() == *this)
        return cand;
    return std::nullopt;
}

Fq6 Fq6::frobenius(int k) const {
    const FrobTables& t = tables();
    return {frob2(c0, k), frob2(c1, k) * t.fq6_c1[k], frob2(c2, k) * t.fq6_c2[k]};
}

Fq12 Fq12::frobenius(int k) const {
    const FrobTables& t = tables();
    Fq6 a = c0.frobenius(k);
    Fq6 b = c1.frobenius(k);
    return {a, b.mul_by_fq2(t.fq12_c1[k])};
}

}  // namespace awc::detail
