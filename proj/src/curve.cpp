// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/detail/curve.hpp"

namespace awc::detail {

namespace {

constexpr std::uint8_t kFlagInfinity = 0x80;
constexpr std::uint8_t kFlagOddY = 0x40;

void fq_to_be(const Fq& x, std::span<std::uint8_t, 32> out) {
    Limbs c = x.to_canonical();
    for (int i = 0; i < 4; ++i) {
        u64 limb = c[static_cast<std::size_t>(3 - i)];
        for (int j = 0; j < 8; ++j)
            out[static_cast<std::size_t>(i * 8 + j)] = static_cast<std::uint8_t>(limb >> (56 - 8 * j));
    }
}

bool fq_from_be(std::span<const std::uint8_t, 32> in, Fq& out) {
    return Fq::from_bytes(in, out);
}

bool y_parity(const Fq& y) {
    return y.is_odd();
}

bool y_parity(const Fq2& y) {
    return y.c0.is_zero() ? y.c1.is_odd() : y.c0.is_odd();
}

}  // namespace

const G1Affine& g1_generator() {
    static const G1Affine g{Fq::from_u64(1), Fq::from_u64(2), false};
    return g;
}

const G2Affine& g2_generator() {
    static const G2Affine g{
        Fq2{Fq::from_canonical({0x46debd5cd992f6edULL, 0x674322d4f75edaddULL,
                                0x426a00665e5c4479ULL, 0x1800deef121f1e76ULL}),
            Fq::from_canonical({0x97e485b7aef312c2ULL, 0xf1aa493335a9e712ULL,
                                0x7260bfb731fb5d25ULL, 0x198e9393920d483aULL})},
        Fq2{Fq::from_canonical({0x4ce6cc0166fa7daaULL, 0xe3d1e7690c43d37bULL,
                                0x4aab71808dcb408fULL, 0x12c85ea5db8c6debULL}),
            Fq::from_canonical({0x55acdadcd122975bULL, 0xbc4b313370b38ef3ULL,
                                0xec9e99ad690c3395ULL, 0x090689d0585ff075ULL})},
        false};
    return g;
}

const Fq& g1_curve_b() {
    static const Fq b = Fq::from_u64(3);
    return b;
}

const Fq2& g2_curve_b() {
    static const Fq2 b{
        Fq::from_canonical({0x3267e6dc24a138e5ULL, 0xb5b4c5e559dbefa3ULL,
                            0x81be18991be06ac3ULL, 0x2b149d40ceb8aaaeULL}),
        Fq::from_canonical({0xe4a2bd0685c315d2ULL, 0xa74fa084e52d1852ULL,
                            0xcd2cafadeed8fdf4ULL, 0x009713b03af0fed4ULL})};
    return b;
}

bool g1_on_curve(const G1Affine& p) {
    if (p.infinity)
        return true;
    return p.y.square() == p.x.square() * p.x + g1_curve_b();
}

bool g2_on_curve(const G2Affine& p) {
    if (p.infinity)
        return true;
    return p.y.square() == p.x.square() * p.x + g2_curve_b();
}

bool g2_in_subgroup(const G2Affine& p) {
    if (p.infinity)
        return true;
    return G2Jac::from_affine(p).mul(FrParams::MOD).is_identity();
}

void g1_to_bytes(const G1Affine& p, std::span<std::uint8_t, 32> out) {
    if (p.infinity) {
        std::fill(out.begin(), out.end(), 0);
        out[0] = kFlagInfinity;
        return;
    }
    fq_to_be(p.x, out);
    if (y_parity(p.y))
        out[0] |= kFlagOddY;
}

bool g1_from_bytes(std::span<const std::uint8_t, 32> in, G1Affine& out) {
    std::array<std::uint8_t, 32> buf;
    std::copy(in.begin(), in.end(), buf.begin());
    const std::uint8_t flags = buf[0] & 0xc0;
    buf[0] &= 0x3f;
    if (flags & kFlagInfinity) {
        for (auto b : buf)
            if (b)
                return false;
        out = G1Affine::identity();
        return true;
    }
    Fq x;
    if (!fq_from_be(buf, x))
        return false;
    auto y = fq_sqrt(x.square() * x + g1_curve_b());
    if (!y)
        return false;
    Fq yy = *y;
    if (y_parity(yy) != static_cast<bool>(flags & kFlagOddY))
        yy = -yy;
    out = {x, yy, false};
    return true;
}

void g2_to_bytes(const G2Affine& p, std::span<std::uint8_t, 64> out) {
    if (p.infinity) {
        std::fill(out.begin(), out.end(), 0);
        out[0] = kFlagInfinity;
        return;
    }
    fq_to_be(p.x.c1, out.subspan<0, 32>());
    fq_to_be(p.x.c0, out.subspan<32, 32>());
    if (y_parity(p.y))
        out[0] |= kFlagOddY;
}

void gt_to_bytes(const Fq12& x, std::span<std::uint8_t, 384> out) {
    const Fq* coords[12] = {&x.c0.c0.c0, &x.c0.c0.c1, &x.c0.c1.c0, &x.c0.c1.c1,
                            &x.c0.c2.c0, &x.c0.c2.c1, &x.c1.c0.c0, &x.c1.c0.c1,
                            &x.c1.c1.c0, &x.c1.c1.c1, &x.c1.c2.c0, &x.c1.c2.c1};
    for (int i = 0; i < 12; ++i)
        fq_to_be(*coords[i], out.subspan(static_cast<std::size_t>(i) * 32).first<32>());
}

bool gt_from_bytes(std::span<const std::uint8_t, 384> in, Fq12& out) {
    Fq* coords[12] = {&out.c0.c0.c0, &out.c0.c0.c1, &out.c0.c1.c0, &out.c0.c1.c1,
                      &out.c0.c2.c0, &out.c0.c2.c1, &out.c1.c0.c0, &out.c1.c0.c1,
                      &out.c1.c1.c0, &out.c1.c1.c1, &out.c1.c2.c0, &out.c1.c2.c1};
    for (int i = 0; i < 12; ++i) {
        std::span<const std::uint8_t, 32> chunk =
            in.subspan(static_cast<std::size_t>(i) * 32).first<32>();
        if (!fq_from_be(chunk, *coords[i]))
            return false;
    }
    return true;
}

bool g2_from_bytes(std::span<const std::uint8_t, 64> in, G2Affine& out, bool check_subgroup) {
    std::array<std::uint8_t, 64> buf;
    std::copy(in.begin(), in.end(), buf.begin());
    const std::uint8_t flags = buf[0] & 0xc0;
    buf[0] &= 0x3f;
    if (flags & kFlagInfinity) {
        for (auto b : buf)
            if (b)
                return false;
        out = G2Affine::identity();
        return true;
    }
    Fq c1, c0;
    if (!fq_from_be(std::span<const std::uint8_t, 32>(buf.data(), 32), c1))
        return false;
    if (!fq_from_be(std::span<const std::uint8_t, 32>(buf.data() + 32, 32), c0))
        return false;
    Fq2 x{c0, c1};
    auto y = (x.square() * x + g2_curve_b()).sqrt();
    if (!y)
        return false;
    Fq2 yy = *y;
    if (y_parity(yy) != static_cast<bool>(flags & kFlagOddY))
        yy = -yy;
    out = {x, yy, false};
    if (check_subgroup && !g2_in_subgroup(out))
        return false;
    return true;
}

}  // namespace awc::detail
