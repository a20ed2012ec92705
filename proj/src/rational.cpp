#include "bellseq/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace bellseq {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: value is not finite");
  return Rational(x);
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    // d.ddd -> integer part + digits / 10^n, sign handled on the whole string
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      neg = digits[0] == '-';
      digits.erase(digits.begin());
    }
    if (digits.empty()) throw std::invalid_argument("parse_rational: malformed '" + text + "'");
    BigInt num(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    if (neg) num = -num;
    return Rational(num, den);
  }
  return Rational(BigInt(text));
}

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt binomial_big(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result *= BigInt(n - i);
    result /= BigInt(i + 1);  // divides exactly at each step
  }
  return result;
}

} // namespace bellseq
