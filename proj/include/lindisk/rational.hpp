#pragma once

#include <gmpxx.h>

#include <string>

namespace lindisk {

using Rational = mpq_class;
using Integer = mpz_class;

Integer int_pow(const Integer& base, unsigned long exp);

// num/den in canonical form (mpq_class's two-argument constructor does not
// canonicalize on its own).
inline Rational make_ratio(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Canonical "a/b" (just "a" when b = 1).
std::string rat_to_string(const Rational& q);

// Inverse of rat_to_string; accepts "a" and "a/b". Throws ParseError.
Rational rat_from_string(const std::string& s);

// floor(a/b) for a rational, as an Integer.
Integer rat_floor(const Rational& q);

// Fractional part q - floor(q), in [0,1).
Rational rat_frac(const Rational& q);

} // namespace lindisk
