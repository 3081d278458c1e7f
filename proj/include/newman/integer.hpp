#pragma once
// Exact arithmetic substrate: thin aliases over GMP plus shared parsing
// and formatting helpers. Every sum in the library is an arbitrary
// precision integer; every ratio is an exact rational.

#include <gmpxx.h>

#include <string>

namespace newman {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_decimal(const Int& n) { return n.get_str(10); }

// GMP canonical fraction form, "num/den" with "/1" omitted.
inline std::string to_fraction(const Rat& r) { return r.get_str(10); }

// Canonical rational num/den. den must be nonzero.
Rat make_rational(const Int& num, const Int& den);

// Parses a non-negative integer given either as a plain decimal string
// or in power form "b^e" (b, e decimal, no whitespace), e.g. "2^2003".
Int parse_extended_integer(const std::string& text);

// Natural log of n > 0, valid far beyond double range.
double log_of(const Int& n);
// Natural log of r > 0.
double log_of(const Rat& r);

}  // namespace newman
