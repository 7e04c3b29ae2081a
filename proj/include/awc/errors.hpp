// awc: verifiable conjunctive keyword search over authenticated indexes
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace awc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Polynomial division by the zero polynomial.
struct DivisionByZeroPoly : Error {
    DivisionByZeroPoly() : Error("division by zero polynomial") {}
};

// Residual sets share a common element: the claimed intersection was not maximal.
struct GcdNotOne : Error {
    GcdNotOne() : Error("polynomial gcd is not 1: claimed intersection not maximal") {}
};

// Polynomial degree exceeds the published power ladder.
struct DegreeExceedsParams : Error {
    explicit DegreeExceedsParams(const std::string& msg) : Error(msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace awc
