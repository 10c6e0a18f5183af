#ifndef TORELLI_RATIONAL_HPP
#define TORELLI_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace torelli {

// Arbitrary-precision rational. gmpxx keeps results of arithmetic in lowest
// terms with a positive denominator; values built by hand must go through
// make_rational / parse_rational so that the same holds.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den = 1);

// Accepts "p", "-p", "p/q" with q != 0. No whitespace.
Rational parse_rational(std::string_view text);

// Canonical text: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

using RationalVector = std::vector<Rational>;

bool is_zero(const RationalVector& v);

}  // namespace torelli

#endif
