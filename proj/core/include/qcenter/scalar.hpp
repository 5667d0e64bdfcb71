#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qcenter {

/// Exact rational in lowest terms (GMP canonicalizes after every operation).
using Scalar = mpq_class;

/// Parses "a", "-a" or "a/b" with decimal integers a, b (b != 0).
Scalar parse_scalar(std::string_view text);

/// "a" when the denominator is 1, "a/b" otherwise.
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

Scalar factorial(unsigned n);

/// n (n-1) ... (n-k+1); zero when k > n.
Scalar falling_factorial(unsigned n, unsigned k);

}  // namespace qcenter
