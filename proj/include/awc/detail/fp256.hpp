// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>

namespace awc::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

// Prime field of up to 254 bits with Montgomery representation (R = 2^256).
// Params supplies the modulus limbs (little-endian), -mod^-1 mod 2^64,
// R mod p and R^2 mod p.
template <typename Params>
class Fp256 {
public:
    constexpr Fp256() : v_{0, 0, 0, 0} {}

    static Fp256 zero() { return Fp256(); }
    static Fp256 one() { return from_mont(Params::R1); }

    static Fp256 from_u64(u64 x) {
        Fp256 out;
        Limbs t{x, 0, 0, 0};
        mont_mul(t.data(), Params::R2.data(), out.v_.data());
        return out;
    }

    // Interprets limbs as a canonical integer < p. Caller must guarantee range.
    static Fp256 from_canonical(const Limbs& limbs) {
        Fp256 out;
        mont_mul(limbs.data(), Params::R2.data(), out.v_.data());
        return out;
    }

    // Raw Montgomery-form limbs (used for compile-time-ish constants).
    static constexpr Fp256 from_mont(const Limbs& limbs) {
        Fp256 out;
        out.v_ = limbs;
        return out;
    }

    Limbs to_canonical() const {
        Limbs one_limb{1, 0, 0, 0};
        Limbs out;
        mont_mul(v_.data(), one_limb.data(), out.data());
        return out;
    }

    const Limbs& mont_limbs() const { return v_; }

    bool is_zero() const { return (v_[0] | v_[1] | v_[2] | v_[3]) == 0; }

    friend bool operator==(const Fp256& a, const Fp256& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Fp256& a, const Fp256& b) { return a.v_ != b.v_; }

    friend Fp256 operator+(const Fp256& a, const Fp256& b) {
        Fp256 out;
        u64 carry = add_limbs(a.v_.data(), b.v_.data(), out.v_.data());
        if (carry || geq_mod(out.v_.data()))
            sub_limbs(out.v_.data(), Params::MOD.data(), out.v_.data());
        return out;
    }

    friend Fp256 operator-(const Fp256& a, const Fp256& b) {
        Fp256 out;
        u64 borrow = sub_limbs(a.v_.data(), b.v_.data(), out.v_.data());
        if (borrow)
            add_limbs(out.v_.data(), Params::MOD.data(), out.v_.data());
        return out;
    }

    friend Fp256 operator-(const Fp256& a) {
        if (a.is_zero())
            return a;
        Fp256 out;
        sub_limbs(Params::MOD.data(), a.v_.data(), out.v_.data());
        return out;
    }

    friend Fp256 operator*(const Fp256& a, const Fp256& b) {
        Fp256 out;
        mont_mul(a.v_.data(), b.v_.data(), out.v_.data());
        return out;
    }

    Fp256& operator+=(const Fp256& o) { *this = *this + o; return *this; }
    Fp256& operator-=(const Fp256& o) { *this = *this - o; return *this; }
    Fp256& operator*=(const Fp256& o) { *this = *this * o; return *this; }

    Fp256 square() const { return *this * *this; }

    Fp256 dbl() const { return *this + *this; }

    Fp256 pow(u64 e) const {
        Fp256 base = *this;
        Fp256 acc = one();
        while (e) {
            if (e & 1)
                acc *= base;
            base = base.square();
            e >>= 1;
        }
        return acc;
    }

    Fp256 pow(const Limbs& e) const {
        Fp256 base = *this;
        Fp256 acc = one();
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

    // Fermat inverse; zero maps to zero.
    Fp256 inverse() const {
        Limbs e = Params::MOD;
        u64 borrow = 0;
        u128 d = static_cast<u128>(e[0]) - 2;
        e[0] = static_cast<u64>(d);
        borrow = static_cast<u64>(-(d >> 64)) & 1;
        for (int i = 1; i < 4 && borrow; ++i) {
            u128 t = static_cast<u128>(e[static_cast<std::size_t>(i)]) - borrow;
            e[static_cast<std::size_t>(i)] = static_cast<u64>(t);
            borrow = static_cast<u64>(-(t >> 64)) & 1;
        }
        return pow(e);
    }

    // Canonical big-endian 32-byte encoding.
    void to_bytes(std::span<std::uint8_t, 32> out) const {
        Limbs c = to_canonical();
        for (int i = 0; i < 4; ++i) {
            u64 limb = c[static_cast<std::size_t>(3 - i)];
            for (int j = 0; j < 8; ++j)
                out[static_cast<std::size_t>(i * 8 + j)] =
                    static_cast<std::uint8_t>(limb >> (56 - 8 * j));
        }
    }

    // Returns false if the encoding is not a canonical value < p.
    static bool from_bytes(std::span<const std::uint8_t, 32> in, Fp256& out) {
        Limbs c{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            u64 limb = 0;
            for (int j = 0; j < 8; ++j)
                limb = (limb << 8) | in[static_cast<std::size_t>(i * 8 + j)];
            c[static_cast<std::size_t>(3 - i)] = limb;
        }
        if (geq_mod(c.data()))
            return false;
        out = from_canonical(c);
        return true;
    }

    // Canonical integer comparison (not Montgomery-form comparison).
    static int cmp(const Fp256& a, const Fp256& b) {
        Limbs ca = a.to_canonical();
        Limbs cb = b.to_canonical();
        for (int i = 3; i >= 0; --i) {
            if (ca[static_cast<std::size_t>(i)] != cb[static_cast<std::size_t>(i)])
                return ca[static_cast<std::size_t>(i)] < cb[static_cast<std::size_t>(i)] ? -1 : 1;
        }
        return 0;
    }

    bool is_odd() const {
        return to_canonical()[0] & 1;
    }

private:
    Limbs v_;

    static u64 add_limbs(const u64* a, const u64* b, u64* out) {
        u128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            u128 s = static_cast<u128>(a[i]) + b[i] + carry;
            out[i] = static_cast<u64>(s);
            carry = s >> 64;
        }
        return static_cast<u64>(carry);
    }

    static u64 sub_limbs(const u64* a, const u64* b, u64* out) {
        u128 borrow = 0;
        for (int i = 0; i < 4; ++i) {
            u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
            out[i] = static_cast<u64>(d);
            borrow = (d >> 64) & 1;
        }
        return static_cast<u64>(borrow);
    }

    static bool geq_mod(const u64* a) {
        for (int i = 3; i >= 0; --i) {
            if (a[i] != Params::MOD[static_cast<std::size_t>(i)])
                return a[i] > Params::MOD[static_cast<std::size_t>(i)];
        }
        return true;
    }

    // CIOS Montgomery multiplication.
    static void mont_mul(const u64* a, const u64* b, u64* out) {
        u64 t[6] = {0, 0, 0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            u128 carry = 0;
            for (int j = 0; j < 4; ++j) {
                u128 s = static_cast<u128>(t[j]) + static_cast<u128>(a[i]) * b[j] + carry;
                t[j] = static_cast<u64>(s);
                carry = s >> 64;
            }
            u128 s4 = static_cast<u128>(t[4]) + carry;
            t[4] = static_cast<u64>(s4);
            t[5] = static_cast<u64>(s4 >> 64);

            u64 m = t[0] * Params::NINV;
            u128 s = static_cast<u128>(t[0]) + static_cast<u128>(m) * Params::MOD[0];
            carry = s >> 64;
            for (int j = 1; j < 4; ++j) {
                s = static_cast<u128>(t[j]) + static_cast<u128>(m) * Params::MOD[static_cast<std::size_t>(j)] + carry;
                t[j - 1] = static_cast<u64>(s);
                carry = s >> 64;
            }
            s = static_cast<u128>(t[4]) + carry;
            t[3] = static_cast<u64>(s);
            t[4] = t[5] + static_cast<u64>(s >> 64);
        }
        if (t[4] || geq_mod(t)) {
            sub_limbs(t, Params::MOD.data(), out);
        } else {
            std::memcpy(out, t, 32);
        }
    }
};

struct FqParams {
    static constexpr Limbs MOD{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                               0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    static constexpr u64 NINV = 0x87d20782e4866389ULL;
    static constexpr Limbs R1{0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                              0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
    static constexpr Limbs R2{0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                              0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
};

struct FrParams {
    static constexpr Limbs MOD{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                               0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    static constexpr u64 NINV = 0xc2e1f593efffffffULL;
    static constexpr Limbs R1{0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                              0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
    static constexpr Limbs R2{0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                              0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
};

using Fq = Fp256<FqParams>;
using Fr = Fp256<FrParams>;

}  // namespace awc::detail
