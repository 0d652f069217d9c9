#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tiler {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Serialized as "num/den", denominator always present.
std::string rat_string(const Rat& q);

// Fixed-point decimal rendering, truncated toward zero.
std::string rat_decimal(const Rat& q, int digits = 6);

// Accepts "a/b" or a bare integer "a".
Rat parse_rational(const std::string& text);

BigInt int_pow(const BigInt& base, int exponent);

// value >= 1 - sqrt(eps), decided by squaring; requires eps >= 0.
bool at_least_one_minus_sqrt(const Rat& value, const Rat& eps);

}  // namespace tiler
