#pragma once

// Exact rationals for the invariant-frame engine.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace curvlab {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Parses "p", "-p", "p/q" or a finite decimal such as "0.125" exactly.
Rational parse_rational(std::string_view text);

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace curvlab
