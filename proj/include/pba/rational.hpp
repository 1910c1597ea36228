#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pba {

/// Exact rational of unbounded precision. Every probability in the library
/// is one of these; doubles only appear in Monte Carlo reporting.
using Rational = mpq_class;

/// Canonical text form: "p/q" reduced with positive denominator, or "p" when
/// the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" (optionally signed). Floats and garbage yield nullopt.
std::optional<Rational> parse_rational(std::string_view text);

/// 2^-k as an exact rational.
Rational inverse_power_of_two(unsigned k);

} // namespace pba
