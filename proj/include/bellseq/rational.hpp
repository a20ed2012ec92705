#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bellseq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Exact conversion: every finite binary64 value is a dyadic rational.
Rational rational_from_double(double x);

/// Parse "num/den", "num", or a decimal literal (decimals are read exactly).
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& r);

/// C(n, k) as a big integer; returns 0 for k > n.
BigInt binomial_big(std::uint64_t n, std::uint64_t k);

} // namespace bellseq
