#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvote {

/// Exact rational arithmetic. Every quantity that feeds a comparison in this
/// library (weights, probabilities, distances, LP entries) is a Rational.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view token);

/// Canonical "p/q" form, or "p" for integers.
std::string to_string(const Rational& value);

Rational make_rational(long numerator, long denominator = 1);

/// Least common multiple of the denominators of `values` (1 for an empty span).
Integer common_denominator(std::span<const Rational> values);

Rational sum(std::span<const Rational> values);

}  // namespace mvote
