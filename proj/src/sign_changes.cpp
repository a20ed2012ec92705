#include "bellseq/sign_changes.hpp"

#include <cmath>
#include <stdexcept>

namespace bellseq {

namespace {

template <typename T, typename SignFn>
SignChangeReport scan(const Window<T>& row, SignFn sign_of) {
  if (row.empty()) throw std::domain_error("count_sign_changes: empty input");
  SignChangeReport report;
  int last_sign = 0;
  long last_witness = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const int s = sign_of(row.values[i]);
    if (s == 0) continue;
    const long k = row.first_index + static_cast<long>(i);
    if (last_sign != 0 && s != last_sign) {
      report.flip_positions.emplace_back(last_witness, k);
      ++report.count;
    }
    last_sign = s;
    last_witness = k;
    report.final_sign = s;
    report.last_nonzero_index = k;
  }
  report.saturated = sign_of(row.values.back()) != 0;
  return report;
}

} // namespace

SignChangeReport count_sign_changes(const Window<double>& row, double eps) {
  if (eps < 0) throw std::domain_error("count_sign_changes: eps must be nonnegative");
  return scan(row, [eps](double v) -> int {
    if (std::fabs(v) <= eps) return 0;
    return v > 0 ? 1 : -1;
  });
}

SignChangeReport count_sign_changes(const Window<Rational>& row) {
  return scan(row, [](const Rational& v) -> int {
    if (v == 0) return 0;
    return v > 0 ? 1 : -1;
  });
}

SignChangeReport count_sign_changes(const FiniteSeq& seq, const EpsPolicy& eps, ArithMode mode) {
  seq.validate();
  if (mode == ArithMode::Rational) {
    Window<Rational> row{0, seq.exact_view()};
    return count_sign_changes(row);
  }
  Window<double> row{0, seq.terms};
  return count_sign_changes(row, eps.snap_eps(max_abs(seq.terms)));
}

double max_abs(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

} // namespace bellseq
