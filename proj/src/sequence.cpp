#include "bellseq/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace bellseq {

FiniteSeq::FiniteSeq(std::vector<double> t) : terms(std::move(t)) { validate(); }

FiniteSeq::FiniteSeq(std::vector<Rational> t) : exact_terms(std::move(t)) {
  terms.reserve(exact_terms.size());
  for (const auto& r : exact_terms) terms.push_back(to_double(r));
  validate();
}

void FiniteSeq::validate() const {
  if (terms.empty()) throw std::invalid_argument("FiniteSeq: window must be nonempty");
  for (double v : terms)
    if (!std::isfinite(v)) throw std::invalid_argument("FiniteSeq: entries must be finite");
  if (!exact_terms.empty() && exact_terms.size() != terms.size())
    throw std::invalid_argument("FiniteSeq: exact view must parallel the float view");
}

FiniteSeq FiniteSeq::truncated(long K) const {
  if (K < 0 || K > last_index()) throw std::invalid_argument("FiniteSeq::truncated: K out of range");
  FiniteSeq out;
  out.terms.assign(terms.begin(), terms.begin() + K + 1);
  if (exact()) out.exact_terms.assign(exact_terms.begin(), exact_terms.begin() + K + 1);
  return out;
}

const std::vector<Rational>& FiniteSeq::exact_view() const {
  if (!exact()) throw std::logic_error("FiniteSeq: exact values not available for this window");
  return exact_terms;
}

Window<double> difference_row(const FiniteSeq& seq, int order) {
  return difference_row_of(seq.terms, order);
}

Window<Rational> difference_row_exact(const FiniteSeq& seq, int order) {
  return difference_row_of(seq.exact_view(), order);
}

namespace {

template <typename T>
std::vector<T> convolve_terms(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<T> out(n, T{});
  for (std::size_t k = 0; k < n; ++k) {
    T acc{};
    for (std::size_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    out[k] = acc;
  }
  return out;
}

} // namespace

FiniteSeq convolve(const FiniteSeq& a, const FiniteSeq& b) {
  a.validate();
  b.validate();
  if (a.exact() && b.exact()) return FiniteSeq(convolve_terms(a.exact_terms, b.exact_terms));
  return FiniteSeq(convolve_terms(a.terms, b.terms));
}

} // namespace bellseq
