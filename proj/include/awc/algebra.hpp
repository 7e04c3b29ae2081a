// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "awc/detail/fp256.hpp"

namespace awc {

// Scalar field of the pairing groups. Document identifiers, polynomial
// coefficients and verification challenges all live here.
using FieldElement = detail::Fr;

struct FieldElementLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const {
        return FieldElement::cmp(a, b) < 0;
    }
};

// Deterministic map from bytes into Z_p^* (never returns zero): SHA-256 of the
// input reduced mod p, re-hashed with a one-byte counter prefix while zero.
FieldElement hash_to_field(std::span<const std::uint8_t> data);

// Coefficients in ascending degree; no trailing zeros except the zero
// polynomial, which is the single coefficient [0].
using Polynomial = std::vector<FieldElement>;

bool poly_is_zero(const Polynomial& p);
int poly_degree(const Polynomial& p);  // -1 for the zero polynomial
Polynomial poly_trim(Polynomial p);

// prod_i (x + roots[i]); the empty product is [1].
Polynomial poly_from_roots(std::span<const FieldElement> roots);

FieldElement poly_eval(const Polynomial& p, const FieldElement& x);

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_derivative(const Polynomial& p);

// a = q*b + r with deg(r) < deg(b). Throws DivisionByZeroPoly.
std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& a, const Polynomial& b);

struct BezoutResult {
    std::vector<Polynomial> cofactors;
    Polynomial gcd;  // monic
    bool coprime() const { return gcd.size() == 1 && !poly_is_zero(gcd); }
};

// Iterated extended Euclid: cofactors q_j with sum q_j * polys[j] = gcd(polys),
// gcd normalized monic. The caller decides whether gcd != 1 is an error.
BezoutResult multi_bezout(std::span<const Polynomial> polys);

// Cofactors q_j with sum q_j * prod_{x in root_sets[j]}(X + x) = 1, for sets
// with empty common intersection. Exploits the known factorizations, so it
// stays near-linear in the total input size. Throws GcdNotOne when the sets
// share an element. Output degrees are bounded by max_j |root_sets[j]|.
std::vector<Polynomial> coprime_cofactors(
    std::span<const std::vector<FieldElement>> root_sets);

// Montgomery batch inversion; zero entries stay zero.
void batch_inverse(std::span<FieldElement> xs);

}  // namespace awc
