#pragma once

#include "bellseq/rational.hpp"

#include <stdexcept>
#include <vector>

namespace bellseq {

enum class ArithMode { Float64, Rational };

/// Finite window a(0..K) of a one-sided real sequence. Indices k < 0 are
/// implicitly zero; values beyond K are unknown (not zero), so classifier
/// verdicts are always qualified by the window.
struct FiniteSeq {
  std::vector<double> terms;          // a(0) .. a(K)
  std::vector<Rational> exact_terms;  // parallel to terms when exact() is true

  FiniteSeq() = default;
  explicit FiniteSeq(std::vector<double> t);
  explicit FiniteSeq(std::vector<Rational> t);

  bool exact() const { return !exact_terms.empty(); }
  long last_index() const { return static_cast<long>(terms.size()) - 1; }  // K
  std::size_t size() const { return terms.size(); }

  /// Throws std::invalid_argument on empty window or non-finite entries.
  void validate() const;

  /// First K+1 terms (keeps exactness).
  FiniteSeq truncated(long K) const;

  /// Exact view of the window; requires exact().
  const std::vector<Rational>& exact_view() const;
};

/// Row of values v(k) for k in [first_index, first_index + size - 1],
/// e.g. an iterated difference carried together with its index offset.
template <typename T>
struct Window {
  long first_index = 0;
  std::vector<T> values;

  long last_index() const { return first_index + static_cast<long>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  const T& at_index(long k) const { return values.at(static_cast<std::size_t>(k - first_index)); }
};

/// v(k+1) - v(k) on [first_index, last_index - 1].
template <typename T>
Window<T> forward_difference(const Window<T>& w) {
  if (w.size() < 2) throw std::invalid_argument("forward_difference: window too short");
  Window<T> out;
  out.first_index = w.first_index;
  out.values.reserve(w.size() - 1);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.values.push_back(w.values[i + 1] - w.values[i]);
  return out;
}

/// The window [-pad_left, K] of the zero-padded extension of `terms`.
template <typename T>
Window<T> padded_window(const std::vector<T>& terms, int pad_left) {
  Window<T> out;
  out.first_index = -static_cast<long>(pad_left);
  out.values.assign(static_cast<std::size_t>(pad_left), T{});
  out.values.insert(out.values.end(), terms.begin(), terms.end());
  return out;
}

/// n-fold iterated difference of the zero-padded sequence, on [-n, K-n].
template <typename T>
Window<T> difference_row_of(const std::vector<T>& terms, int order) {
  if (order < 0) throw std::domain_error("difference_row: negative order");
  if (static_cast<std::size_t>(order) + 1 > terms.size())
    throw std::invalid_argument("difference_row: window too short for requested order");
  Window<T> row = padded_window(terms, order);
  for (int i = 0; i < order; ++i) row = forward_difference(row);
  return row;
}

Window<double> difference_row(const FiniteSeq& seq, int order);
Window<Rational> difference_row_exact(const FiniteSeq& seq, int order);

/// Cauchy product (a*b)(k) = sum_{j<=k} a(j) b(k-j), truncated to
/// [0, min(Ka, Kb)] where every summand is known. Exact when both are.
FiniteSeq convolve(const FiniteSeq& a, const FiniteSeq& b);

} // namespace bellseq
