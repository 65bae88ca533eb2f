#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sphtrop {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical text form: "3", "-1/2".
std::string to_string(const Rational& q);

/// Accepts "p" or "p/q" with optional sign; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Integer lcm(const Integer& a, const Integer& b);

/// Lexicographic comparison, used as the canonical order for coordinate tuples.
bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b);

std::string to_string(const std::vector<Rational>& v);

}  // namespace sphtrop
