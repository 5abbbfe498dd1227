#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pnf {

// Canonical exact rational; mpq_class keeps gcd(|num|, den) = 1 and den > 0
// as long as every value passes through canonicalize() after raw assignment.
using Rational = mpq_class;

/// Writes `p` for integers and `p/q` otherwise.
std::string to_string(const Rational& q);

/// Parses a decimal integer or `p/q`. Throws ParseError (column relative to
/// the token) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// 2^(-p) as an exact rational.
Rational dyadic(int p);

}  // namespace pnf
