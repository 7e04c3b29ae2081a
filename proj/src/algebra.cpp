// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <memory>

#include <openssl/evp.h>

#include "awc/errors.hpp"

namespace awc {

namespace {

using detail::Limbs;
using detail::u128;
using detail::u64;

const FieldElement kZero = FieldElement::zero();
const FieldElement kOne = FieldElement::one();

// ------------------------------------------------------------------ NTT
// The scalar field has 2-adicity 28; kOmega generates the order-2^28 subgroup.
constexpr Limbs kOmegaCanonical{0x9bd61b6e725b19f0ULL, 0x402d111e41112ed4ULL,
                                0x00e0a7eb8ef62abcULL, 0x2a3c09f0a58a7e85ULL};
constexpr unsigned kTwoAdicity = 28;

struct NttRoots {
    // roots[k] has order 2^k
    std::array<FieldElement, kTwoAdicity + 1> fwd;
    std::array<FieldElement, kTwoAdicity + 1> inv;
    NttRoots() {
        fwd[kTwoAdicity] = FieldElement::from_canonical(kOmegaCanonical);
        for (unsigned k = kTwoAdicity; k > 0; --k)
            fwd[k - 1] = fwd[k].square();
        for (unsigned k = 0; k <= kTwoAdicity; ++k)
            inv[k] = fwd[k].inverse();
    }
};

const NttRoots& ntt_roots() {
    static const NttRoots roots;
    return roots;
}

void ntt(std::vector<FieldElement>& a, bool inverse) {
    const std::size_t n = a.size();
    unsigned logn = 0;
    while ((std::size_t{1} << logn) < n)
        ++logn;
    assert((std::size_t{1} << logn) == n && logn <= kTwoAdicity);

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    const NttRoots& roots = ntt_roots();
    unsigned level = 1;
    for (std::size_t len = 2; len <= n; len <<= 1, ++level) {
        const FieldElement wlen = inverse ? roots.inv[level] : roots.fwd[level];
        for (std::size_t i = 0; i < n; i += len) {
            FieldElement w = kOne;
            for (std::size_t j = 0; j < len / 2; ++j) {
                FieldElement u = a[i + j];
                FieldElement v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    if (inverse) {
        FieldElement ninv = FieldElement::from_u64(n).inverse();
        for (auto& x : a)
            x *= ninv;
    }
}

constexpr std::size_t kSchoolbookThreshold = 64;

Polynomial mul_schoolbook(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.size() + b.size() - 1, kZero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

Polynomial mul_ntt(const Polynomial& a, const Polynomial& b) {
    std::size_t need = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < need)
        n <<= 1;
    std::vector<FieldElement> fa(n, kZero), fb(n, kZero);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    ntt(fa, false);
    ntt(fb, false);
    for (std::size_t i = 0; i < n; ++i)
        fa[i] *= fb[i];
    ntt(fa, true);
    fa.resize(need);
    return fa;
}

// Product truncated to the low k coefficients.
Polynomial mul_mod_xk(const Polynomial& a, const Polynomial& b, std::size_t k) {
    Polynomial full =
        (std::min(a.size(), b.size()) < kSchoolbookThreshold || a.size() + b.size() - 1 < kSchoolbookThreshold)
            ? mul_schoolbook(a, b)
            : mul_ntt(a, b);
    if (full.size() > k)
        full.resize(k);
    return full;
}

Polynomial reverse_coeffs(const Polynomial& p, std::size_t n) {
    Polynomial out(n, kZero);
    for (std::size_t i = 0; i < n && i < p.size(); ++i)
        out[i] = p[p.size() - 1 - i];
    return out;
}

// Inverse of f as a power series mod x^k; requires f[0] != 0.
Polynomial series_inverse(const Polynomial& f, std::size_t k) {
    Polynomial g{f[0].inverse()};
    const FieldElement two = kOne + kOne;
    for (std::size_t prec = 1; prec < k; prec <<= 1) {
        std::size_t next = std::min(prec * 2, k);
        Polynomial ftrunc(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(std::min(f.size(), next)));
        Polynomial t = mul_mod_xk(ftrunc, g, next);
        for (auto& c : t)
            c = -c;
        t[0] += two;
        g = mul_mod_xk(g, t, next);
    }
    g.resize(k, kZero);
    return g;
}

std::pair<Polynomial, Polynomial> divrem_schoolbook(const Polynomial& a, const Polynomial& b) {
    const std::size_t db = b.size() - 1;
    Polynomial rem = a;
    Polynomial quot(a.size() - db, kZero);
    const FieldElement inv_lead = b[db].inverse();
    for (std::size_t i = quot.size(); i-- > 0;) {
        FieldElement c = rem[db + i] * inv_lead;
        quot[i] = c;
        if (c.is_zero())
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[i + j] -= c * b[j];
    }
    rem.resize(db == 0 ? 1 : db, kZero);
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Polynomial from_roots_range(std::span<const FieldElement> roots) {
    if (roots.empty())
        return Polynomial{kOne};
    if (roots.size() == 1)
        return Polynomial{roots[0], kOne};
    std::size_t mid = roots.size() / 2;
    return poly_mul(from_roots_range(roots.subspan(0, mid)), from_roots_range(roots.subspan(mid)));
}

// --------------------------------------------------- subproduct tree
constexpr std::size_t kHornerLeafBlock = 32;

struct TreeNode {
    Polynomial prod;
    int left = -1;
    int right = -1;
    std::size_t leaf_begin = 0;
    std::size_t leaf_count = 0;
};

struct ProductTree {
    std::vector<TreeNode> nodes;
    std::vector<FieldElement> roots;
    int root = -1;

    int build(std::size_t begin, std::size_t count) {
        TreeNode node;
        node.leaf_begin = begin;
        node.leaf_count = count;
        if (count <= kHornerLeafBlock) {
            node.prod = from_roots_range({roots.data() + begin, count});
        } else {
            std::size_t mid = count / 2;
            node.left = build(begin, mid);
            node.right = build(begin + mid, count - mid);
            node.prod = poly_mul(nodes[static_cast<std::size_t>(node.left)].prod,
                                 nodes[static_cast<std::size_t>(node.right)].prod);
        }
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size() - 1);
    }

    explicit ProductTree(std::span<const FieldElement> rs) : roots(rs.begin(), rs.end()) {
        if (!roots.empty()) {
            nodes.reserve(4 * roots.size() / kHornerLeafBlock + 2);
            root = build(0, roots.size());
        }
    }

    const Polynomial& product() const {
        static const Polynomial one{kOne};
        return root < 0 ? one : nodes[static_cast<std::size_t>(root)].prod;
    }

    void eval_rec(int idx, const Polynomial& rem, std::vector<FieldElement>& out) const {
        const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
        if (node.left < 0) {
            for (std::size_t i = 0; i < node.leaf_count; ++i)
                out[node.leaf_begin + i] = poly_eval(rem, -roots[node.leaf_begin + i]);
            return;
        }
        eval_rec(node.left,
                 poly_divrem(rem, nodes[static_cast<std::size_t>(node.left)].prod).second, out);
        eval_rec(node.right,
                 poly_divrem(rem, nodes[static_cast<std::size_t>(node.right)].prod).second, out);
    }

    // f(-root_i) for every leaf root.
    std::vector<FieldElement> multipoint_eval(const Polynomial& f) const {
        std::vector<FieldElement> out(roots.size(), kZero);
        if (root < 0)
            return out;
        eval_rec(root, poly_divrem(f, nodes[static_cast<std::size_t>(root)].prod).second, out);
        return out;
    }

    Polynomial combine_rec(int idx, std::span<const FieldElement> weights) const {
        const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
        if (node.left < 0) {
            // schoolbook over the leaf block: sum_i w_i * block/(x + r_i)
            Polynomial acc{kZero};
            for (std::size_t i = 0; i < node.leaf_count; ++i) {
                Polynomial rest{kOne};
                for (std::size_t j = 0; j < node.leaf_count; ++j) {
                    if (j != i)
                        rest = poly_mul(rest, Polynomial{roots[node.leaf_begin + j], kOne});
                }
                for (auto& c : rest)
                    c *= weights[node.leaf_begin + i];
                acc = poly_add(acc, rest);
            }
            return acc;
        }
        Polynomial l = combine_rec(node.left, weights);
        Polynomial r = combine_rec(node.right, weights);
        return poly_add(poly_mul(l, nodes[static_cast<std::size_t>(node.right)].prod),
                        poly_mul(r, nodes[static_cast<std::size_t>(node.left)].prod));
    }

    // sum_i weights[i] * product / (x + root_i)
    Polynomial weighted_all_but_one(std::span<const FieldElement> weights) const {
        if (root < 0)
            return Polynomial{kZero};
        return combine_rec(root, weights);
    }
};

struct XgcdResult {
    Polynomial g, u, v;  // u*a + v*b = g, g monic
};

XgcdResult xgcd(const Polynomial& a, const Polynomial& b) {
    Polynomial r0 = a, r1 = b;
    Polynomial s0{kOne}, s1{kZero};
    Polynomial t0{kZero}, t1{kOne};
    while (!poly_is_zero(r1)) {
        auto [q, r] = poly_divrem(r0, r1);
        Polynomial s2 = poly_sub(s0, poly_mul(q, s1));
        Polynomial t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    FieldElement c = r0.back().inverse();
    auto scale = [&](Polynomial& p) {
        for (auto& x : p)
            x *= c;
    };
    scale(r0);
    scale(s0);
    scale(t0);
    return {poly_trim(std::move(r0)), poly_trim(std::move(s0)), poly_trim(std::move(t0))};
}

// Bezout pair for two products of disjoint linear factors: a*A + b*B = 1,
// computed by partial-fraction decomposition of 1/(A*B).
std::pair<Polynomial, Polynomial> bezout_disjoint(std::span<const FieldElement> a_roots,
                                                  std::span<const FieldElement> b_roots) {
    if (a_roots.empty())
        return {Polynomial{kOne}, Polynomial{kZero}};
    if (b_roots.empty())
        return {Polynomial{kZero}, Polynomial{kOne}};

    ProductTree ta(a_roots);
    ProductTree tb(b_roots);
    const Polynomial& A = ta.product();
    const Polynomial& B = tb.product();
    // (AB)'(-r) collapses to A'(-r)B(-r) at roots of A and A(-r)B'(-r) at
    // roots of B, so one derivative serves both weight sets
    Polynomial dF = poly_derivative(poly_mul(A, B));

    auto side_a = std::async(std::launch::async, [&] {
        std::vector<FieldElement> wa = ta.multipoint_eval(dF);
        batch_inverse(wa);
        return ta.weighted_all_but_one(wa);  // deg < |A|
    });
    std::vector<FieldElement> wb = tb.multipoint_eval(dF);
    batch_inverse(wb);
    Polynomial a_cof = tb.weighted_all_but_one(wb);  // deg < |B|
    Polynomial b_cof = side_a.get();
    return {poly_trim(std::move(a_cof)), poly_trim(std::move(b_cof))};
}

std::vector<FieldElement> sorted_unique(std::span<const FieldElement> xs) {
    std::vector<FieldElement> out(xs.begin(), xs.end());
    std::sort(out.begin(), out.end(), FieldElementLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

bool poly_is_zero(const Polynomial& p) {
    return p.size() == 1 && p[0].is_zero();
}

int poly_degree(const Polynomial& p) {
    return poly_is_zero(p) ? -1 : static_cast<int>(p.size()) - 1;
}

Polynomial poly_trim(Polynomial p) {
    while (p.size() > 1 && p.back().is_zero())
        p.pop_back();
    if (p.empty())
        p.push_back(kZero);
    return p;
}

Polynomial poly_from_roots(std::span<const FieldElement> roots) {
    return from_roots_range(roots);
}

FieldElement poly_eval(const Polynomial& p, const FieldElement& x) {
    FieldElement acc = kZero;
    for (std::size_t i = p.size(); i-- > 0;)
        acc = acc * x + p[i];
    return acc;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.size(), b.size()), kZero);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return poly_trim(std::move(out));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.size(), b.size()), kZero);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    return poly_trim(std::move(out));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (poly_is_zero(a) || poly_is_zero(b))
        return Polynomial{kZero};
    Polynomial out;
    if (std::min(a.size(), b.size()) < kSchoolbookThreshold)
        out = mul_schoolbook(a, b);
    else
        out = mul_ntt(a, b);
    return poly_trim(std::move(out));
}

Polynomial poly_derivative(const Polynomial& p) {
    if (p.size() <= 1)
        return Polynomial{kZero};
    Polynomial out(p.size() - 1, kZero);
    FieldElement k = kZero;
    for (std::size_t i = 1; i < p.size(); ++i) {
        k += kOne;
        out[i - 1] = p[i] * k;
    }
    return poly_trim(std::move(out));
}

std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& a, const Polynomial& b) {
    if (poly_is_zero(b))
        throw DivisionByZeroPoly{};
    if (a.size() < b.size() || poly_is_zero(a))
        return {Polynomial{kZero}, a};
    const std::size_t quot_size = a.size() - b.size() + 1;
    if (b.size() < kSchoolbookThreshold || quot_size < kSchoolbookThreshold)
        return divrem_schoolbook(a, b);

    Polynomial brev = reverse_coeffs(b, b.size());
    Polynomial arev = reverse_coeffs(a, a.size());
    Polynomial binv = series_inverse(brev, quot_size);
    Polynomial qrev = mul_mod_xk(arev, binv, quot_size);
    Polynomial q(quot_size, kZero);
    for (std::size_t i = 0; i < quot_size; ++i)
        q[i] = qrev[quot_size - 1 - i];
    q = poly_trim(std::move(q));
    Polynomial r = poly_sub(a, poly_mul(q, b));
    return {std::move(q), std::move(r)};
}

BezoutResult multi_bezout(std::span<const Polynomial> polys) {
    if (polys.empty())
        throw Error("multi_bezout: no input polynomials");
    for (const auto& p : polys)
        if (poly_is_zero(p))
            throw Error("multi_bezout: zero polynomial input");

    BezoutResult res;
    Polynomial d = polys[0];
    res.cofactors.push_back(Polynomial{kOne});
    for (std::size_t k = 1; k < polys.size(); ++k) {
        if (poly_degree(d) == 0) {
            // gcd already a unit; remaining cofactors are zero
            res.cofactors.push_back(Polynomial{kZero});
            continue;
        }
        XgcdResult step = xgcd(d, polys[k]);
        for (auto& cof : res.cofactors)
            cof = poly_mul(cof, step.u);
        res.cofactors.push_back(step.v);
        d = step.g;
    }
    // normalize monic (xgcd already does for the steps it ran)
    FieldElement c = d.back().inverse();
    for (auto& x : d)
        x *= c;
    if (c != kOne)
        for (auto& cof : res.cofactors)
            for (auto& x : cof)
                x *= c;
    res.gcd = poly_trim(std::move(d));
    return res;
}

std::vector<Polynomial> coprime_cofactors(std::span<const std::vector<FieldElement>> root_sets) {
    const std::size_t t = root_sets.size();
    if (t == 0)
        throw Error("coprime_cofactors: no input sets");

    for (std::size_t j = 0; j < t; ++j) {
        if (root_sets[j].empty()) {
            std::vector<Polynomial> out(t, Polynomial{kZero});
            out[j] = Polynomial{kOne};
            return out;
        }
    }

    std::vector<std::vector<FieldElement>> sets;
    sets.reserve(t);
    for (const auto& s : root_sets)
        sets.push_back(sorted_unique(s));

    std::vector<Polynomial> cof;
    cof.push_back(Polynomial{kOne});
    std::vector<FieldElement> common = sets[0];
    for (std::size_t k = 1; k < t; ++k) {
        if (common.empty()) {
            cof.push_back(Polynomial{kZero});
            continue;
        }
        std::vector<FieldElement> next;
        std::set_intersection(common.begin(), common.end(), sets[k].begin(), sets[k].end(),
                              std::back_inserter(next), FieldElementLess{});
        std::vector<FieldElement> a_roots;
        std::set_difference(common.begin(), common.end(), next.begin(), next.end(),
                            std::back_inserter(a_roots), FieldElementLess{});
        std::vector<FieldElement> b_roots;
        std::set_difference(sets[k].begin(), sets[k].end(), next.begin(), next.end(),
                            std::back_inserter(b_roots), FieldElementLess{});
        auto [a_cof, b_cof] = bezout_disjoint(a_roots, b_roots);
        for (auto& q : cof)
            q = poly_mul(q, a_cof);
        cof.push_back(std::move(b_cof));
        common = std::move(next);
    }
    if (!common.empty())
        throw GcdNotOne{};

    // reduce cofactors modulo a pivot set polynomial so that all degrees stay
    // within the published power ladder, then fix the pivot by exact division
    std::size_t pivot = 0;
    std::size_t max_size = 0;
    for (std::size_t j = 0; j < t; ++j) {
        if (sets[j].size() > sets[pivot].size())
            pivot = j;
        max_size = std::max(max_size, sets[j].size());
    }
    bool need_reduction = false;
    for (std::size_t j = 0; j < t; ++j) {
        if (cof[j].size() > max_size) {
            need_reduction = true;
            break;
        }
    }
    if (need_reduction) {
        Polynomial p_pivot = poly_from_roots(sets[pivot]);
        Polynomial acc{kOne};
        for (std::size_t j = 0; j < t; ++j) {
            if (j == pivot)
                continue;
            if (poly_degree(cof[j]) >= poly_degree(p_pivot))
                cof[j] = poly_divrem(cof[j], p_pivot).second;
            if (!poly_is_zero(cof[j]))
                acc = poly_sub(acc, poly_mul(cof[j], poly_from_roots(sets[j])));
        }
        auto [q, r] = poly_divrem(acc, p_pivot);
        if (!poly_is_zero(r))
            throw Error("coprime_cofactors: internal reduction failure");
        cof[pivot] = std::move(q);
    }
    return cof;
}

void batch_inverse(std::span<FieldElement> xs) {
    std::vector<FieldElement> prefix(xs.size());
    FieldElement acc = kOne;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        prefix[i] = acc;
        if (!xs[i].is_zero())
            acc *= xs[i];
    }
    FieldElement inv = acc.inverse();
    for (std::size_t i = xs.size(); i-- > 0;) {
        if (xs[i].is_zero())
            continue;
        FieldElement cur = xs[i];
        xs[i] = inv * prefix[i];
        inv *= cur;
    }
}

FieldElement hash_to_field(std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, 32> digest;
    std::vector<std::uint8_t> buf;
    std::uint8_t counter = 0;
    for (;;) {
        unsigned int len = 32;
        if (counter == 0) {
            EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr);
        } else {
            buf.assign(1, counter);
            buf.insert(buf.end(), data.begin(), data.end());
            EVP_Digest(buf.data(), buf.size(), digest.data(), &len, EVP_sha256(), nullptr);
        }
        // big-endian bytes -> limbs, then reduce below r by subtraction
        Limbs limbs{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            u64 limb = 0;
            for (int j = 0; j < 8; ++j)
                limb = (limb << 8) | digest[static_cast<std::size_t>(i * 8 + j)];
            limbs[static_cast<std::size_t>(3 - i)] = limb;
        }
        const Limbs& mod = detail::FrParams::MOD;
        auto geq = [&]() {
            for (int i = 3; i >= 0; --i) {
                std::size_t idx = static_cast<std::size_t>(i);
                if (limbs[idx] != mod[idx])
                    return limbs[idx] > mod[idx];
            }
            return true;
        };
        while (geq()) {
            u128 borrow = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                u128 diff = static_cast<u128>(limbs[i]) - mod[i] - borrow;
                limbs[i] = static_cast<u64>(diff);
                borrow = (diff >> 64) & 1;
            }
        }
        FieldElement out = FieldElement::from_canonical(limbs);
        if (!out.is_zero())
            return out;
        ++counter;
    }
}

}  // namespace awc
