#pragma once

#include "bellseq/rational.hpp"
#include "bellseq/sequence.hpp"

#include <random>
#include <vector>

namespace testutil {

using bellseq::BigInt;
using bellseq::FiniteSeq;
using bellseq::Rational;

inline Rational R(long num, long den = 1) { return Rational(num, den); }

// Independent difference oracle: Delta^n a(k) = sum_i C(n,i) (-1)^{n-i} a(k+i)
// on the zero-padded extension. Deliberately separate from the library's
// iterated-difference path.
template <typename T>
T difference_by_binomials(const std::vector<T>& terms, int order, long k) {
  T acc{};
  for (int i = 0; i <= order; ++i) {
    const long idx = k + i;
    if (idx < 0 || idx >= static_cast<long>(terms.size())) continue;
    T term = T(bellseq::binomial_big(order, i)) * terms[idx];
    if ((order - i) % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

template <>
inline double difference_by_binomials<double>(const std::vector<double>& terms, int order, long k) {
  double acc = 0.0;
  for (int i = 0; i <= order; ++i) {
    const long idx = k + i;
    if (idx < 0 || idx >= static_cast<long>(terms.size())) continue;
    const double bin = bellseq::binomial_big(order, i).convert_to<double>();
    acc += ((order - i) % 2 == 1 ? -bin : bin) * terms[idx];
  }
  return acc;
}

// Brute-force sign-change count of a value list: longest alternating
// subsequence of strict signs, zeros transparent.
template <typename T>
int brute_force_sign_changes(const std::vector<T>& values) {
  int count = 0, last = 0;
  for (const auto& v : values) {
    const int s = v > T{} ? 1 : (v < T{} ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline FiniteSeq geometric_seq(const Rational& ratio, long K) {
  std::vector<Rational> terms(K + 1);
  terms[0] = 1;
  for (long k = 1; k <= K; ++k) terms[k] = terms[k - 1] * ratio;
  return FiniteSeq(std::move(terms));
}

// uniform distribution over {0, ..., n-1}, materialized with trailing
// zeros out to window K
inline FiniteSeq uniform_seq(int n, long K) {
  std::vector<Rational> terms(K + 1, Rational(0));
  for (int i = 0; i < n; ++i) terms[i] = Rational(1, n);
  return FiniteSeq(std::move(terms));
}

inline Rational random_rational(std::mt19937_64& rng, long max_num = 12, long max_den = 8) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

} // namespace testutil
