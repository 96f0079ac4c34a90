#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ssc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", a signed integer, or a decimal literal ("-0.25", "1e-3")
/// into an exact rational. Throws std::invalid_argument on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);

}  // namespace ssc
