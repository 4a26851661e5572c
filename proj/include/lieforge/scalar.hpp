#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lieforge {

// Exact rational in canonical form (reduced, positive denominator). Every
// arithmetic result of mpq_class is already canonical; values built from
// text go through parse_scalar, which canonicalizes.
using Scalar = mpq_class;

// Accepts "p" or "p/q" with an optional sign. Throws std::invalid_argument
// on anything else, including a zero denominator.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace lieforge
