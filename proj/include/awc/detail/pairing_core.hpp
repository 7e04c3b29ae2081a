// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>

#include "awc/detail/curve.hpp"

namespace awc::detail {

// Optimal ate pairing on the BN curve. The Miller loop runs over the NAF of
// 6u+2 followed by the two Frobenius line steps; the final exponentiation
// computes exactly (q^12 - 1)/r.
Fq12 miller_loop(const G1Affine& p, const G2Affine& q);
Fq12 multi_miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs);
Fq12 final_exponentiation(const Fq12& f);
Fq12 pairing(const G1Affine& p, const G2Affine& q);

}  // namespace awc::detail
