// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#include "awc/pairing.hpp"

#include <openssl/evp.h>

#include <mutex>
#include <thread>

#include "awc/errors.hpp"

namespace awc {

namespace {

using detail::FixedBaseTable;
using detail::Fq;
using detail::Fq2;
using detail::G1Jac;
using detail::G2Jac;
using detail::Limbs;

std::vector<Limbs> canonical_scalars(const Polynomial& poly) {
    std::vector<Limbs> out;
    out.reserve(poly.size());
    for (const auto& c : poly)
        out.push_back(c.to_canonical());
    return out;
}

template <typename F>
std::vector<detail::AffinePoint<F>> ladder(const detail::AffinePoint<F>& base,
                                           std::span<const Limbs> exponents) {
    FixedBaseTable<F> table(base);
    std::vector<detail::JacPoint<F>> jac(exponents.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = (exponents.size() + hw - 1) / hw;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < hw; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(exponents.size(), lo + chunk);
        if (lo >= hi)
            break;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                jac[i] = table.mul(exponents[i]);
        });
    }
    for (auto& w : workers)
        w.join();
    std::vector<detail::AffinePoint<F>> affine(exponents.size());
    detail::batch_normalize<F>(jac, affine);
    return affine;
}

void sha256_update_bytes(EVP_MD_CTX* ctx, std::span<const std::uint8_t> data) {
    EVP_DigestUpdate(ctx, data.data(), data.size());
}

std::array<std::uint8_t, 32> params_fingerprint(const PublicParams& pp) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    const std::uint8_t label[8] = {'a', 'w', 'c', 'p', 'a', 'r', 'a', 'm'};
    sha256_update_bytes(ctx, label);
    std::uint8_t nbuf[8];
    for (int i = 0; i < 8; ++i)
        nbuf[i] = static_cast<std::uint8_t>(pp.n >> (56 - 8 * i));
    sha256_update_bytes(ctx, nbuf);
    std::array<std::uint8_t, 32> g1buf;
    for (const auto& p : pp.powers_g1) {
        detail::g1_to_bytes(p, g1buf);
        sha256_update_bytes(ctx, g1buf);
    }
    std::array<std::uint8_t, 64> g2buf;
    for (const auto& p : pp.powers_g2) {
        detail::g2_to_bytes(p, g2buf);
        sha256_update_bytes(ctx, g2buf);
    }
    sha256_update_bytes(ctx, pp.verify_key.bytes);
    std::array<std::uint8_t, 32> out;
    unsigned int len = 32;
    EVP_DigestFinal_ex(ctx, out.data(), &len);
    EVP_MD_CTX_free(ctx);
    return out;
}

}  // namespace

FieldElement random_field_element(const RandomSource& rng) {
    std::array<std::uint8_t, 32> buf;
    for (;;) {
        rng(buf);
        buf[0] &= 0x3f;
        FieldElement out;
        if (FieldElement::from_bytes(std::span<const std::uint8_t, 32>(buf), out))
            return out;
    }
}

FieldElement random_nonzero_field_element(const RandomSource& rng) {
    for (;;) {
        FieldElement x = random_field_element(rng);
        if (!x.is_zero())
            return x;
    }
}

KeyMaterial keygen(std::uint64_t n, const RandomSource& rng) {
    if (n < 1)
        throw Error("keygen: degree bound must be at least 1");
    KeyMaterial out;
    out.sk.s = random_nonzero_field_element(rng);
    out.sk.signing_key = sig::generate(rng);

    std::vector<Limbs> exponents(n + 1);
    FieldElement power = FieldElement::one();
    for (std::uint64_t k = 0; k <= n; ++k) {
        exponents[k] = power.to_canonical();
        power *= out.sk.s;
    }
    out.pp.n = n;
    out.pp.powers_g1 = ladder<Fq>(detail::g1_generator(), exponents);
    out.pp.powers_g2 = ladder<Fq2>(detail::g2_generator(), exponents);
    out.pp.verify_key = sig::verify_key_of(out.sk.signing_key);
    out.pp.fingerprint = params_fingerprint(out.pp);
    return out;
}

G1Element commit_g1(const Polynomial& poly, const PublicParams& pp) {
    if (poly.size() > pp.powers_g1.size())
        throw DegreeExceedsParams("commit_g1: polynomial degree exceeds available powers");
    auto scalars = canonical_scalars(poly);
    return detail::msm<Fq>({pp.powers_g1.data(), poly.size()}, scalars).to_affine();
}

G2Element commit_g2(const Polynomial& poly, const PublicParams& pp) {
    if (poly.size() > pp.powers_g2.size())
        throw DegreeExceedsParams("commit_g2: polynomial degree exceeds available powers");
    auto scalars = canonical_scalars(poly);
    return detail::msm<Fq2>({pp.powers_g2.data(), poly.size()}, scalars).to_affine();
}

TargetElement pair(const G1Element& a, const G2Element& b) {
    return detail::pairing(a, b);
}

TargetElement multi_pair(std::span<const std::pair<G1Element, G2Element>> pairs) {
    return detail::final_exponentiation(detail::multi_miller_loop(pairs));
}

TargetElement gt_identity() {
    return TargetElement::one();
}

TargetElement generator_pairing(const PublicParams& pp) {
    static std::mutex mu;
    static std::array<std::uint8_t, 32> cached_fp{};
    static TargetElement cached = TargetElement::one();
    static bool have = false;
    std::lock_guard<std::mutex> lock(mu);
    if (!have || cached_fp != pp.fingerprint) {
        cached = pair(pp.g1(), pp.g2());
        cached_fp = pp.fingerprint;
        have = true;
    }
    return cached;
}

PublicParams truncate_params(const PublicParams& pp, std::size_t max_degree) {
    PublicParams out = pp;
    if (max_degree + 1 < out.powers_g1.size())
        out.powers_g1.resize(max_degree + 1);
    if (max_degree + 1 < out.powers_g2.size())
        out.powers_g2.resize(max_degree + 1);
    return out;
}

bool validate_params(const PublicParams& pp, std::span<const std::size_t> samples) {
    if (pp.powers_g1.empty() || pp.powers_g2.empty())
        return false;
    if (!(pp.powers_g1[0] == detail::g1_generator()) ||
        !(pp.powers_g2[0] == detail::g2_generator()))
        return false;
    for (std::size_t k : samples) {
        if (k >= pp.powers_g1.size() || k >= pp.powers_g2.size())
            return false;
        if (!(pair(pp.powers_g1[k], pp.g2()) == pair(pp.g1(), pp.powers_g2[k])))
            return false;
    }
    return true;
}

G1Element g1_mul(const G1Element& p, const FieldElement& k) {
    return G1Jac::from_affine(p).mul(k.to_canonical()).to_affine();
}

G2Element g2_mul(const G2Element& p, const FieldElement& k) {
    return G2Jac::from_affine(p).mul(k.to_canonical()).to_affine();
}

G1Element g1_add(const G1Element& a, const G1Element& b) {
    return G1Jac::from_affine(a).add_mixed(b).to_affine();
}

G2Element g2_add(const G2Element& a, const G2Element& b) {
    return G2Jac::from_affine(a).add_mixed(b).to_affine();
}

}  // namespace awc
