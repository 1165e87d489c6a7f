#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace meetjoin {

using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", or a finite decimal such as "-1.25"; throws ParseError.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double.
Rational from_double(double x);

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

} // namespace meetjoin
