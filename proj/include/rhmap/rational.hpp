#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "rhmap/error.hpp"

namespace rhmap {

// Exact arithmetic over Q. cpp_rational keeps values in lowest terms with a
// positive denominator; there is no floating point anywhere in this project.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p" or "p/q" with optional leading '-'. No decimals.
Rational rational_from_string(std::string_view text);

inline Rational inverse_factorial(int k) {
    Integer f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(1, f);
}

}  // namespace rhmap
