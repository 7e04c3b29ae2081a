// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/detail/pairing_core.hpp"

#include <vector>

namespace awc::detail {

namespace {

// NAF digits of 6u+2, least significant first; the top digit is handled by
// starting the loop at T = Q.
constexpr int kNaf[66] = {0, 0, 0, 1, 0, 1, 0, -1, 0, 0, -1, 0, 0, 0, 1, 0,  0,
                          -1, 0, -1, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 0, 1,
                          0, -1, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, 1, 0,
                          -1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0, -1, 0, 1};

constexpr u64 kCurveU = 4965661367192848881ULL;

struct G2Proj {
    Fq2 x, y, z;
};

// Sparse line element c0 + (c3 + c4 v) w.
struct LineCoeffs {
    Fq2 c0, c3, c4;
};

const Fq& two_inv() {
    static const Fq t = Fq::from_u64(2).inverse();
    return t;
}

LineCoeffs dbl_step(G2Proj& r) {
    Fq2 a = (r.x * r.y).mul_by_fq(two_inv());
    Fq2 b = r.y.square();
    Fq2 c = r.z.square();
    Fq2 e = g2_curve_b() * (c + c + c);
    Fq2 f = e + e + e;
    Fq2 g = (b + f).mul_by_fq(two_inv());
    Fq2 h = (r.y + r.z).square() - (b + c);
    Fq2 i = e - b;
    Fq2 j = r.x.square();
    Fq2 e2 = e.square();
    r.x = a * (b - f);
    r.y = g.square() - (e2 + e2 + e2);
    r.z = b * h;
    return {-h, j + j + j, i};
}

LineCoeffs add_step(G2Proj& r, const G2Affine& q) {
    Fq2 theta = r.y - q.y * r.z;
    Fq2 lambda = r.x - q.x * r.z;
    Fq2 c = theta.square();
    Fq2 d = lambda.square();
    Fq2 e = lambda * d;
    Fq2 f = r.z * c;
    Fq2 g = r.x * d;
    Fq2 h = e + f - (g + g);
    r.x = lambda * h;
    r.y = theta * (g - h) - e * r.y;
    r.z = r.z * e;
    Fq2 j = theta * q.x - lambda * q.y;
    return {lambda, -theta, j};
}

void ell(Fq12& f, const LineCoeffs& l, const G1Affine& p) {
    f = f.mul_by_034(l.c0.mul_by_fq(p.y), l.c3.mul_by_fq(p.x), l.c4);
}

// G2 Frobenius twist constants: psi(x, y) = (conj(x) a1, conj(y) b1) and
// -psi^2(x, y) = (x a2, y).
struct PsiConsts {
    Fq2 a1, b1;
    Fq a2;
    PsiConsts() {
        a1 = Fq2{Fq::from_canonical({0x99e39557176f553dULL, 0xb78cc310c2c3330cULL,
                                     0x4c0bec3cf559b143ULL, 0x2fb347984f7911f7ULL}),
                 Fq::from_canonical({0x1665d51c640fcba2ULL, 0x32ae2a1d0b7c9dceULL,
                                     0x4ba4cc8bd75a0794ULL, 0x16c9e55061ebae20ULL})};
        b1 = Fq2{Fq::from_canonical({0xdc54014671a0135aULL, 0xdbaae0eda9c95998ULL,
                                     0xdc5ec698b6e2f9b9ULL, 0x063cf305489af5dcULL}),
                 Fq::from_canonical({0x82d37f632623b0e3ULL, 0x21807dc98fa25bd2ULL,
                                     0x0704b5a7ec796f2bULL, 0x07c03cbcac41049aULL})};
        a2 = Fq::from_canonical({0xe4bd44e5607cfd48ULL, 0xc28f069fbb966e3dULL,
                                 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL});
    }
};

const PsiConsts& psi_consts() {
    static const PsiConsts c;
    return c;
}

struct PreparedPair {
    G1Affine p;
    G2Affine q;
    G2Affine neg_q;
    G2Proj t;
};

Fq12 multi_miller_prepared(std::vector<PreparedPair>& pairs) {
    Fq12 f = Fq12::one();
    for (int i = 64; i >= 0; --i) {
        f = f.square();
        for (auto& pp : pairs)
            ell(f, dbl_step(pp.t), pp.p);
        if (kNaf[i] == 1) {
            for (auto& pp : pairs)
                ell(f, add_step(pp.t, pp.q), pp.p);
        } else if (kNaf[i] == -1) {
            for (auto& pp : pairs)
                ell(f, add_step(pp.t, pp.neg_q), pp.p);
        }
    }
    const PsiConsts& pc = psi_consts();
    for (auto& pp : pairs) {
        G2Affine q1{pp.q.x.conjugate() * pc.a1, pp.q.y.conjugate() * pc.b1, false};
        G2Affine q2{pp.q.x.mul_by_fq(pc.a2), pp.q.y, false};
        ell(f, add_step(pp.t, q1), pp.p);
        ell(f, add_step(pp.t, q2), pp.p);
    }
    return f;
}

}  // namespace

Fq12 miller_loop(const G1Affine& p, const G2Affine& q) {
    std::pair<G1Affine, G2Affine> one_pair{p, q};
    return multi_miller_loop({&one_pair, 1});
}

Fq12 multi_miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs) {
    std::vector<PreparedPair> prepared;
    prepared.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        if (p.infinity || q.infinity)
            continue;
        prepared.push_back({p, q, {q.x, -q.y, false}, {q.x, q.y, Fq2::one()}});
    }
    if (prepared.empty())
        return Fq12::one();
    return multi_miller_prepared(prepared);
}

Fq12 final_exponentiation(const Fq12& f) {
    // easy part: f^((q^6 - 1)(q^2 + 1))
    Fq12 t1 = f.conjugate() * f.inverse();
    t1 = t1.frobenius(2) * t1;

    // hard part: a multiple-free chain for (q^4 - q^2 + 1)/r
    Fq12 fp1 = t1.frobenius(1);
    Fq12 fp2 = t1.frobenius(2);
    Fq12 fp3 = fp2.frobenius(1);
    Fq12 fu1 = t1.pow(kCurveU);
    Fq12 fu2 = fu1.pow(kCurveU);
    Fq12 fu3 = fu2.pow(kCurveU);
    Fq12 y3 = fu1.frobenius(1).conjugate();
    Fq12 fu2p = fu2.frobenius(1);
    Fq12 fu3p = fu3.frobenius(1);
    Fq12 y2 = fu2.frobenius(2);
    Fq12 y0 = fp1 * fp2 * fp3;
    Fq12 y1 = t1.conjugate();
    Fq12 y5 = fu2.conjugate();
    Fq12 y4 = (fu1 * fu2p).conjugate();
    Fq12 y6 = (fu3 * fu3p).conjugate();

    Fq12 t0 = y6.square() * y4 * y5;
    Fq12 tt1 = y3 * y5 * t0;
    t0 = t0 * y2;
    tt1 = tt1.square() * t0;
    tt1 = tt1.square();
    t0 = tt1 * y1;
    tt1 = tt1 * y0;
    t0 = t0.square() * tt1;
    return t0;
}

Fq12 pairing(const G1Affine& p, const G2Affine& q) {
    if (p.infinity || q.infinity)
        return Fq12::one();
    return final_exponentiation(miller_loop(p, q));
}

}  // namespace awc::detail
