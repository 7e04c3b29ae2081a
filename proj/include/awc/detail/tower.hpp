// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "awc/detail/fp256.hpp"

namespace awc::detail {

// Square root in the base field (q = 3 mod 4); nullopt for non-residues.
std::optional<Fq> fq_sqrt(const Fq& x);

// Extension tower over the curve base field:
//   Fq2 = Fq[i]/(i^2 + 1), Fq6 = Fq2[v]/(v^3 - xi), Fq12 = Fq6[w]/(w^2 - v)
// with xi = 9 + i.

struct Fq2 {
    Fq c0, c1;

    static Fq2 zero() { return {Fq::zero(), Fq::zero()}; }
    static Fq2 one() { return {Fq::one(), Fq::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

    friend bool operator==(const Fq2&, const Fq2&) = default;

    friend Fq2 operator+(const Fq2& a, const Fq2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Fq2 operator-(const Fq2& a, const Fq2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
    friend Fq2 operator-(const Fq2& a) { return {-a.c0, -a.c1}; }

    friend Fq2 operator*(const Fq2& a, const Fq2& b) {
        Fq t0 = a.c0 * b.c0;
        Fq t1 = a.c1 * b.c1;
        Fq t2 = (a.c0 + a.c1) * (b.c0 + b.c1);
        return {t0 - t1, t2 - t0 - t1};
    }

    Fq2& operator+=(const Fq2& o) { *this = *this + o; return *this; }
    Fq2& operator-=(const Fq2& o) { *this = *this - o; return *this; }
    Fq2& operator*=(const Fq2& o) { *this = *this * o; return *this; }

    Fq2 square() const {
        Fq t0 = c0 + c1;
        Fq t1 = c0 - c1;
        Fq t2 = c0 * c1;
        return {t0 * t1, t2 + t2};
    }

    Fq2 dbl() const { return {c0 + c0, c1 + c1}; }

    Fq2 conjugate() const { return {c0, -c1}; }

    Fq2 mul_by_fq(const Fq& s) const { return {c0 * s, c1 * s}; }

    // multiplication by xi = 9 + i
    Fq2 mul_by_xi() const {
        Fq t0 = c0.dbl().dbl().dbl() + c0;  // 9*c0
        Fq t1 = c1.dbl().dbl().dbl() + c1;
        return {t0 - c1, t1 + c0};
    }

    Fq2 inverse() const {
        Fq norm = c0.square() + c1.square();
        Fq ni = norm.inverse();
        return {c0 * ni, -(c1 * ni)};
    }

    Fq2 pow(const Limbs& e) const;

    // square root; nullopt for non-residues
    std::optional<Fq2> sqrt() const;
};

struct Fq6 {
    Fq2 c0, c1, c2;

    static Fq6 zero() { return {Fq2::zero(), Fq2::zero(), Fq2::zero()}; }
    static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

    friend bool operator==(const Fq6&, const Fq6&) = default;

    friend Fq6 operator+(const Fq6& a, const Fq6& b) {
        return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
    }
    friend Fq6 operator-(const Fq6& a, const Fq6& b) {
        return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
    }
    friend Fq6 operator-(const Fq6& a) { return {-a.c0, -a.c1, -a.c2}; }

    friend Fq6 operator*(const Fq6& a, const Fq6& b) {
        Fq2 v0 = a.c0 * b.c0;
        Fq2 v1 = a.c1 * b.c1;
        Fq2 v2 = a.c2 * b.c2;
        Fq2 t0 = ((a.c1 + a.c2) * (b.c1 + b.c2) - v1 - v2).mul_by_xi() + v0;
        Fq2 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1 + v2.mul_by_xi();
        Fq2 t2 = (a.c0 + a.c2) * (b.c0 + b.c2) - v0 - v2 + v1;
        return {t0, t1, t2};
    }

    Fq6& operator+=(const Fq6& o) { *this = *this + o; return *this; }
    Fq6& operator-=(const Fq6& o) { *this = *this - o; return *this; }
    Fq6& operator*=(const Fq6& o) { *this = *this * o; return *this; }

    Fq6 square() const { return *this * *this; }

    // multiplication by v
    Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

    Fq6 mul_by_fq2(const Fq2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    // multiplication by the sparse element b0 + b1 v
    Fq6 mul_by_01(const Fq2& b0, const Fq2& b1) const {
        Fq2 t0 = c0 * b0 + c2.mul_by_xi() * b1;
        Fq2 t1 = c0 * b1 + c1 * b0;
        Fq2 t2 = c1 * b1 + c2 * b0;
        return {t0, t1, t2};
    }

    Fq6 inverse() const {
        Fq2 a0 = c0.square() - c1 * c2.mul_by_xi();
        Fq2 a1 = c2.square().mul_by_xi() - c0 * c1;
        Fq2 a2 = c1.square() - c0 * c2;
        Fq2 t = ((c2 * a1 + c1 * a2).mul_by_xi() + c0 * a0).inverse();
        return {a0 * t, a1 * t, a2 * t};
    }

    // q^k-power Frobenius, k in {1,2,3}
    Fq6 frobenius(int k) const;
};

struct Fq12 {
    Fq6 c0, c1;

    static Fq12 zero() { return {Fq6::zero(), Fq6::zero()}; }
    static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool is_one() const { return *this == one(); }

    friend bool operator==(const Fq12&, const Fq12&) = default;

    friend Fq12 operator+(const Fq12& a, const Fq12& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Fq12 operator-(const Fq12& a, const Fq12& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }

    friend Fq12 operator*(const Fq12& a, const Fq12& b) {
        Fq6 v0 = a.c0 * b.c0;
        Fq6 v1 = a.c1 * b.c1;
        Fq6 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1;
        return {v0 + v1.mul_by_v(), t1};
    }

    Fq12& operator*=(const Fq12& o) { *this = *this * o; return *this; }

    Fq12 square() const { return *this * *this; }

    Fq12 conjugate() const { return {c0, -c1}; }

    Fq12 inverse() const {
        Fq6 t = (c0.square() - c1.square().mul_by_v()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    // multiplication by the sparse line element s00 + (s10 + s11 v) w
    Fq12 mul_by_034(const Fq2& s00, const Fq2& s10, const Fq2& s11) const {
        Fq6 t0 = c0.mul_by_fq2(s00);
        Fq6 t1 = c1.mul_by_01(s10, s11);
        Fq6 out1 = c1.mul_by_fq2(s00) + c0.mul_by_01(s10, s11);
        return {t0 + t1.mul_by_v(), out1};
    }

    Fq12 pow(u64 e) const {
        Fq12 base = *this;
        Fq12 acc = one();
        while (e) {
            if (e & 1)
                acc *= base;
            base = base.square();
            e >>= 1;
        }
        return acc;
    }

    // q^k-power Frobenius, k in {1,2,3}
    Fq12 frobenius(int k) const;
};

}  // namespace awc::detail
