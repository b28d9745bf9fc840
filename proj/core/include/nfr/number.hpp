#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nfr {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" into a canonical rational. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

Integer ipow(const Integer& base, unsigned long exponent);
Integer ipow(long base, unsigned long exponent);

/// Least non-negative residue of value modulo m (m > 0).
long mod(const Integer& value, long m);

bool is_integer(const Rational& value);

/// Converts to long, throwing std::overflow_error if it does not fit.
long to_long(const Integer& value);

}  // namespace nfr
