#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sg {

using Rational = mpq_class;

/// Lowest-terms "p/q", with "/q" dropped when q == 1.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q"; throws sg::Error(Syntax) otherwise or on q == 0.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace sg
