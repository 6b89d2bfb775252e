#pragma once

#include <gmpxx.h>

#include <string>

namespace pbw {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "3", "-2", "3/4". Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace pbw
