#pragma once

#include "bellseq/sequence.hpp"

#include <utility>
#include <vector>

namespace bellseq {

/// Zero-snapping policy used by every classifier. The default is relative
/// to the largest magnitude of the row being inspected, since iterated
/// differences lose roughly one bit per order and a global absolute
/// threshold would misclassify deep rows.
struct EpsPolicy {
  enum class Kind { RowRelative, Absolute, Exact };
  Kind kind = Kind::RowRelative;
  double value = 1e-12;

  static EpsPolicy row_relative(double rel = 1e-12) { return {Kind::RowRelative, rel}; }
  static EpsPolicy absolute(double eps) { return {Kind::Absolute, eps}; }
  static EpsPolicy exact() { return {Kind::Exact, 0.0}; }

  double snap_eps(double row_max_abs) const {
    switch (kind) {
      case Kind::RowRelative: return value * row_max_abs;
      case Kind::Absolute: return value;
      case Kind::Exact: return 0.0;
    }
    return 0.0;
  }
};

/// Witnessed sign flips of a row. Values with |v| <= eps are snapped to
/// zero and never contribute; a flip (i, j) records consecutive nonzero
/// witnesses of opposite sign, with j the first index carrying the new
/// sign. `saturated` is set when the final window entry is still nonzero
/// after snapping: the row has not settled inside the window and the
/// count is a live lower bound.
struct SignChangeReport {
  int count = 0;
  std::vector<std::pair<long, long>> flip_positions;
  bool saturated = false;
  int final_sign = 0;  // sign of the last nonzero snapped value; 0 if none
  long last_nonzero_index = 0;
};

SignChangeReport count_sign_changes(const Window<double>& row, double eps);
SignChangeReport count_sign_changes(const Window<Rational>& row);

/// Convenience overload: the sequence window at offset 0, snapped per policy.
SignChangeReport count_sign_changes(const FiniteSeq& seq, const EpsPolicy& eps, ArithMode mode);

double max_abs(const std::vector<double>& values);

} // namespace bellseq
