// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "awc/detail/tower.hpp"

namespace awc::detail {

template <typename F>
struct AffinePoint {
    F x = F::zero();
    F y = F::zero();
    bool infinity = true;

    static AffinePoint identity() { return {}; }

    friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

// Jacobian coordinates; z = 0 encodes the identity.
template <typename F>
struct JacPoint {
    F x = F::one();
    F y = F::one();
    F z = F::zero();

    static JacPoint identity() { return {}; }

    bool is_identity() const { return z.is_zero(); }

    static JacPoint from_affine(const AffinePoint<F>& p) {
        if (p.infinity)
            return identity();
        return {p.x, p.y, F::one()};
    }

    AffinePoint<F> to_affine() const {
        if (is_identity())
            return AffinePoint<F>::identity();
        F zi = z.inverse();
        F zi2 = zi.square();
        return {x * zi2, y * zi2 * zi, false};
    }

    JacPoint neg() const { return is_identity() ? *this : JacPoint{x, -y, z}; }

    JacPoint dbl() const {
        if (is_identity())
            return *this;
        F a = x.square();
        F b = y.square();
        F c = b.square();
        F t = (x + b).square() - a - c;
        F d = t + t;
        F e = a + a + a;
        F f = e.square();
        F x3 = f - (d + d);
        F c8 = c + c;
        c8 = c8 + c8;
        c8 = c8 + c8;
        F y3 = e * (d - x3) - c8;
        F yz = y * z;
        return {x3, y3, yz + yz};
    }

    JacPoint add(const JacPoint& o) const {
        if (is_identity())
            return o;
        if (o.is_identity())
            return *this;
        F z1z1 = z.square();
        F z2z2 = o.z.square();
        F u1 = x * z2z2;
        F u2 = o.x * z1z1;
        F s1 = y * z2z2 * o.z;
        F s2 = o.y * z1z1 * z;
        if (u1 == u2) {
            if (s1 == s2)
                return dbl();
            return identity();
        }
        F h = u2 - u1;
        F i = (h + h).square();
        F j = h * i;
        F r = s2 - s1;
        r = r + r;
        F v = u1 * i;
        F x3 = r.square() - j - v - v;
        F s1j = s1 * j;
        F y3 = r * (v - x3) - (s1j + s1j);
        F z3 = ((z + o.z).square() - z1z1 - z2z2) * h;
        return {x3, y3, z3};
    }

    JacPoint add_mixed(const AffinePoint<F>& o) const {
        if (o.infinity)
            return *this;
        if (is_identity())
            return from_affine(o);
        F z1z1 = z.square();
        F u2 = o.x * z1z1;
        F s2 = o.y * z * z1z1;
        if (u2 == x) {
            if (s2 == y)
                return dbl();
            return identity();
        }
        F h = u2 - x;
        F hh = h.square();
        F i = hh + hh;
        i = i + i;
        F j = h * i;
        F r = s2 - y;
        r = r + r;
        F v = x * i;
        F x3 = r.square() - j - v - v;
        F yj = y * j;
        F y3 = r * (v - x3) - (yj + yj);
        F z3 = (z + h).square() - z1z1 - hh;
        return {x3, y3, z3};
    }

    // canonical-limb scalar multiplication, most significant bit first
    JacPoint mul(const Limbs& scalar) const {
        JacPoint acc = identity();
        bool started = false;
        for (int limb = 3; limb >= 0; --limb) {
            u64 word = scalar[static_cast<std::size_t>(limb)];
            for (int bit = 63; bit >= 0; --bit) {
                if (started)
                    acc = acc.dbl();
                if ((word >> bit) & 1) {
                    acc = acc.add(*this);
                    started = true;
                }
            }
        }
        return acc;
    }
};

template <typename F>
void batch_normalize(std::span<JacPoint<F>> pts, std::span<AffinePoint<F>> out) {
    std::vector<F> zs;
    zs.reserve(pts.size());
    for (const auto& p : pts)
        zs.push_back(p.is_identity() ? F::one() : p.z);
    // Montgomery batch inversion
    std::vector<F> prefix(zs.size());
    F acc = F::one();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        prefix[i] = acc;
        acc *= zs[i];
    }
    F inv = acc.inverse();
    for (std::size_t i = zs.size(); i-- > 0;) {
        F zi = inv * prefix[i];
        inv *= zs[i];
        if (pts[i].is_identity()) {
            out[i] = AffinePoint<F>::identity();
        } else {
            F zi2 = zi.square();
            out[i] = {pts[i].x * zi2, pts[i].y * zi2 * zi, false};
        }
    }
}

// Multi-scalar product: bucketed windows above the small-size cutoff, plain
// double-and-add accumulation below.
template <typename F>
JacPoint<F> msm(std::span<const AffinePoint<F>> bases, std::span<const Limbs> scalars) {
    const std::size_t n = bases.size();
    if (n <= 256) {
        JacPoint<F> acc = JacPoint<F>::identity();
        for (std::size_t i = 0; i < n; ++i)
            acc = acc.add(JacPoint<F>::from_affine(bases[i]).mul(scalars[i]));
        return acc;
    }
    unsigned c = 3;
    while ((std::size_t{1} << (c + 3)) < n && c < 16)
        ++c;
    const unsigned windows = (254 + c - 1) / c;
    JacPoint<F> result = JacPoint<F>::identity();
    std::vector<JacPoint<F>> buckets(std::size_t{1} << c);
    for (unsigned w = windows; w-- > 0;) {
        for (unsigned k = 0; k < c && !result.is_identity(); ++k)
            result = result.dbl();
        std::fill(buckets.begin(), buckets.end(), JacPoint<F>::identity());
        const unsigned shift = w * c;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned limb = shift / 64;
            unsigned off = shift % 64;
            u64 frag = scalars[i][limb] >> off;
            if (off + c > 64 && limb + 1 < 4)
                frag |= scalars[i][limb + 1] << (64 - off);
            frag &= (u64{1} << c) - 1;
            if (frag)
                buckets[frag] = buckets[frag].add_mixed(bases[i]);
        }
        JacPoint<F> running = JacPoint<F>::identity();
        JacPoint<F> sum = JacPoint<F>::identity();
        for (std::size_t b = buckets.size(); b-- > 1;) {
            running = running.add(buckets[b]);
            sum = sum.add(running);
        }
        result = result.add(sum);
    }
    return result;
}

// Fixed-base exponentiation table (8-bit windows) for power-ladder generation.
template <typename F>
class FixedBaseTable {
public:
    explicit FixedBaseTable(const AffinePoint<F>& base) {
        constexpr unsigned kWindows = 32;  // 256 bits / 8
        table_.resize(kWindows * 255);
        std::vector<JacPoint<F>> jac(kWindows * 255);
        JacPoint<F> cur = JacPoint<F>::from_affine(base);
        for (unsigned w = 0; w < kWindows; ++w) {
            JacPoint<F> acc = JacPoint<F>::identity();
            for (unsigned d = 1; d <= 255; ++d) {
                acc = acc.add(cur);
                jac[w * 255 + d - 1] = acc;
            }
            // advance cur by 2^8
            cur = acc.add(cur);  // acc = 255*cur, acc+cur = 256*cur
        }
        batch_normalize<F>(jac, table_);
    }

    JacPoint<F> mul(const Limbs& scalar) const {
        JacPoint<F> acc = JacPoint<F>::identity();
        for (unsigned w = 0; w < 32; ++w) {
            unsigned byte = static_cast<unsigned>((scalar[w / 8] >> ((w % 8) * 8)) & 0xff);
            if (byte)
                acc = acc.add_mixed(table_[w * 255 + byte - 1]);
        }
        return acc;
    }

private:
    std::vector<AffinePoint<F>> table_;
};

using G1Affine = AffinePoint<Fq>;
using G1Jac = JacPoint<Fq>;
using G2Affine = AffinePoint<Fq2>;
using G2Jac = JacPoint<Fq2>;

const G1Affine& g1_generator();
const G2Affine& g2_generator();
const Fq& g1_curve_b();
const Fq2& g2_curve_b();

bool g1_on_curve(const G1Affine& p);
bool g2_on_curve(const G2Affine& p);
bool g2_in_subgroup(const G2Affine& p);

// Canonical compressed encodings: big-endian x with flag bits in the top byte
// (bit 7 infinity, bit 6 odd y). G2 stores x.c1 first.
void g1_to_bytes(const G1Affine& p, std::span<std::uint8_t, 32> out);
bool g1_from_bytes(std::span<const std::uint8_t, 32> in, G1Affine& out);
void g2_to_bytes(const G2Affine& p, std::span<std::uint8_t, 64> out);
bool g2_from_bytes(std::span<const std::uint8_t, 64> in, G2Affine& out, bool check_subgroup);

// Target-group elements: twelve big-endian base-field coordinates.
void gt_to_bytes(const Fq12& x, std::span<std::uint8_t, 384> out);
bool gt_from_bytes(std::span<const std::uint8_t, 384> in, Fq12& out);

}  // namespace awc::detail
