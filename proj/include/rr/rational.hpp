#pragma once
#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rr {

using Rational = mpq_class;

// "p/q" or "p"; canonical form.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q", and decimal literals like "1.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace rr
