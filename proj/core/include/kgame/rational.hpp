#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kgame {

// Exact non-negative weights. Always normalized to lowest terms.
// Expression templates are off so Rational mixes freely with std::min/max.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

// 2^-k for k >= 0.
Rational pow2_neg(int k);

// 2^k as a rational, k >= 0.
Rational pow2(int k);

// "num/den", always with an explicit denominator (zero is "0/1").
std::string format_rational(const Rational& r);

// Strict inverse of format_rational: decimal digits without leading zeros,
// denominator >= 1, lowest terms. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Smallest multiple of 2^-quantum_bits strictly greater than r.
Rational next_dyadic_above(const Rational& r, int quantum_bits);

}  // namespace kgame
