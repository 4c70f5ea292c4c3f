#pragma once

#include <gmpxx.h>

#include <string>

namespace capdom {

// All demands, capacities, costs and dual variables are exact rationals.
// mpq_class keeps values canonical (reduced, positive denominator), so
// equality and ordering are always exact.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "p/q", or a decimal literal like "1.25" into an exact rational.
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" when the value is integral, "p/q" otherwise.
std::string format_rational(const Rational& r);

/// mpq_class has no long long constructor; go through mpz.
inline Rational to_rational(long long v) {
    BigInt z;
    mpz_set_si(z.get_mpz_t(), v);
    return Rational(z);
}

/// Smallest integer >= r.
BigInt ceil_rational(const Rational& r);

/// ceil_rational narrowed to long long; throws ValidationError if it does not fit.
long long ceil_to_ll(const Rational& r);

} // namespace capdom
