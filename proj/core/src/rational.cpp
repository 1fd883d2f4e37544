#include "kgame/rational.hpp"

#include <stdexcept>

namespace kgame {

namespace {

BigInt parse_natural(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("empty number");
  if (digits.size() > 1 && digits.front() == '0') {
    throw std::invalid_argument("leading zero in '" + std::string(digits) + "'");
  }
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal number: '" + std::string(digits) + "'");
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational pow2_neg(int k) {
  if (k < 0) throw std::invalid_argument("pow2_neg: negative exponent");
  BigInt den = 1;
  den <<= k;
  return Rational(BigInt(1), den);
}

Rational pow2(int k) {
  if (k < 0) throw std::invalid_argument("pow2: negative exponent");
  BigInt num = 1;
  num <<= k;
  return Rational(num);
}

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("rational must be num/den: '" + std::string(text) + "'");
  }
  BigInt num = parse_natural(text.substr(0, slash));
  BigInt den = parse_natural(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  if (boost::multiprecision::numerator(r) != num) {
    throw std::invalid_argument("rational not in lowest terms: '" + std::string(text) + "'");
  }
  return r;
}

Rational next_dyadic_above(const Rational& r, int quantum_bits) {
  BigInt scale = 1;
  scale <<= quantum_bits;
  Rational scaled = r * scale;
  BigInt floor_units = boost::multiprecision::numerator(scaled) /
                       boost::multiprecision::denominator(scaled);
  return Rational(floor_units + 1, scale);
}

}  // namespace kgame
