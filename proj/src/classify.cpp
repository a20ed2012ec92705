#include "bellseq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bellseq {

const char* to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::ExactN: return "exact-n";
    case OrderVerdict::TooMany: return "too-many";
    case OrderVerdict::TailUncertain: return "tail-uncertain";
  }
  return "?";
}

const char* to_string(BellOverall v) {
  switch (v) {
    case BellOverall::ConsistentWithBell: return "consistent-with-bell";
    case BellOverall::Refuted: return "refuted-at-order-n";
    case BellOverall::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(WhaleCandidate::Verdict v) {
  switch (v) {
    case WhaleCandidate::Verdict::Consistent: return "consistent";
    case WhaleCandidate::Verdict::Refuted: return "refuted";
    case WhaleCandidate::Verdict::Uncertain: return "tail-uncertain";
  }
  return "?";
}

namespace {

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

template <typename T>
Window<T> clipped_left(const Window<T>& row, long from_index) {
  if (from_index <= row.first_index) return row;
  const std::size_t drop = static_cast<std::size_t>(from_index - row.first_index);
  if (drop >= row.size()) throw std::logic_error("clipped_left: empty clip");
  Window<T> out;
  out.first_index = from_index;
  out.values.assign(row.values.begin() + static_cast<long>(drop), row.values.end());
  return out;
}

SignChangeReport scan_row(const Window<double>& row, const EpsPolicy& eps) {
  return count_sign_changes(row, eps.snap_eps(max_abs(row.values)));
}

SignChangeReport scan_row(const Window<Rational>& row, const EpsPolicy&) {
  return count_sign_changes(row);
}

void require_order_fits(const FiniteSeq& seq, int N) {
  if (N < 0) throw std::domain_error("order must be nonnegative");
  if (N > seq.last_index()) throw std::invalid_argument("window too short for requested order");
}

template <typename T>
CmReport cm_impl(const std::vector<T>& terms, int N, const EpsPolicy& eps) {
  CmReport report;
  report.max_order_checked = N;
  report.passed = true;
  Window<T> row{0, terms};
  for (int n = 0; n <= N; ++n) {
    const int parity = parity_sign(n);
    if constexpr (std::is_same_v<T, double>) {
      const double row_eps = eps.snap_eps(max_abs(row.values));
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double signed_value = parity * row.values[i];
        if (signed_value < -row_eps) {
          report.passed = false;
          report.first_violation = CmViolation{n, static_cast<long>(i), signed_value};
          return report;
        }
      }
    } else {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (parity * row.values[i] < 0) {
          report.passed = false;
          report.first_violation = CmViolation{n, static_cast<long>(i), parity * to_double(row.values[i])};
          return report;
        }
      }
    }
    if (n < N) row = forward_difference(row);
  }
  return report;
}

template <typename T>
BellReport bell_impl(const std::vector<T>& terms, int N, const EpsPolicy& eps) {
  BellReport report;
  report.max_order_checked = N;
  Window<T> row = padded_window(terms, N);  // [-N, K]
  bool all_exact = true;
  for (int n = 0; n <= N; ++n) {
    const Window<T> slice = clipped_left(row, -static_cast<long>(n));  // [-n, K-n]
    const SignChangeReport sc = scan_row(slice, eps);
    OrderEvidence ev;
    ev.order = n;
    ev.sign_changes = sc.count;
    ev.saturated = sc.saturated;
    if (sc.count > n) {
      ev.verdict = OrderVerdict::TooMany;
      if (report.refuted_order < 0) report.refuted_order = n;
    } else if (sc.count == n && !sc.saturated && sc.final_sign == parity_sign(n)) {
      ev.verdict = OrderVerdict::ExactN;
    } else {
      ev.verdict = OrderVerdict::TailUncertain;
    }
    all_exact = all_exact && ev.verdict == OrderVerdict::ExactN;
    report.per_order.push_back(ev);
    if (n < N) row = forward_difference(row);
  }
  if (report.refuted_order >= 0) report.overall = BellOverall::Refuted;
  else if (all_exact) report.overall = BellOverall::ConsistentWithBell;
  else report.overall = BellOverall::Inconclusive;
  return report;
}

template <typename T>
WhaleReport whale_impl(const std::vector<T>& terms, int N, int dmax, const EpsPolicy& eps) {
  WhaleReport report;

  // Strict positivity on the support window [0, j_last]; trailing snapped
  // zeros are window material, interior ones refute.
  double base_eps = 0.0;
  if constexpr (std::is_same_v<T, double>) {
    std::vector<double> dbl(terms.begin(), terms.end());
    base_eps = eps.snap_eps(max_abs(dbl));
  }
  long j_last = -1;
  for (long k = static_cast<long>(terms.size()) - 1; k >= 0; --k) {
    bool nonzero;
    if constexpr (std::is_same_v<T, double>) nonzero = std::fabs(terms[k]) > base_eps;
    else nonzero = terms[k] != 0;
    if (nonzero) { j_last = k; break; }
  }
  if (j_last < 0) throw std::invalid_argument("whale_order_up_to: sequence is zero on the window");
  for (long k = 0; k <= j_last; ++k) {
    bool positive;
    if constexpr (std::is_same_v<T, double>) positive = terms[k] > base_eps;
    else positive = terms[k] > 0;
    if (!positive) {
      report.positivity_failed = true;
      report.positivity_witness = k;
      return report;
    }
  }

  std::vector<Window<T>> rows;
  rows.reserve(N + 1);
  rows.push_back(padded_window(terms, N));
  for (int n = 1; n <= N; ++n) rows.push_back(forward_difference(rows.back()));

  for (int d = 0; d <= dmax; ++d) {
    WhaleCandidate cand;
    cand.d = d;
    bool refuted = false, all_complete = true;
    for (int n = 0; n <= N; ++n) {
      const long from = std::max(-static_cast<long>(n), -static_cast<long>(d));
      const Window<T> slice = clipped_left(rows[n], from);
      const SignChangeReport sc = scan_row(slice, eps);
      const int target = std::min(n, d);
      OrderEvidence ev;
      ev.order = n;
      ev.sign_changes = sc.count;
      ev.saturated = sc.saturated;
      const bool sign_ok = sc.final_sign == parity_sign(n) || sc.final_sign == 0;
      if (sc.count > target || (sc.count == target && !sign_ok)) {
        ev.verdict = OrderVerdict::TooMany;
        if (!refuted) cand.refuted_at_order = n;
        refuted = true;
      } else if (sc.count == target) {
        ev.verdict = OrderVerdict::ExactN;
      } else {
        ev.verdict = OrderVerdict::TailUncertain;
        all_complete = false;
      }
      cand.per_order.push_back(ev);
    }
    if (refuted) cand.verdict = WhaleCandidate::Verdict::Refuted;
    else if (all_complete) cand.verdict = WhaleCandidate::Verdict::Consistent;
    else cand.verdict = WhaleCandidate::Verdict::Uncertain;
    report.per_d.push_back(cand);
    if (!report.order_estimate && cand.verdict == WhaleCandidate::Verdict::Consistent)
      report.order_estimate = d;
  }
  report.exceeds_dmax = !report.order_estimate.has_value();
  return report;
}

// --- total positivity ---------------------------------------------------

template <typename T>
T toeplitz_entry(const std::vector<T>& terms, long row, long col) {
  const long m = row - col;
  if (m < 0) return T{};
  return terms[static_cast<std::size_t>(m)];
}

double det_inplace(std::vector<double>& m, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(m[r * n + c]) > std::fabs(m[pivot * n + c])) pivot = r;
    if (m[pivot * n + c] == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m[c * n + j], m[pivot * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (int j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

Rational det_inplace(std::vector<Rational>& m, int n) {
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[r * n + c] != 0) { pivot = r; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m[c * n + j], m[pivot * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const Rational f = m[r * n + c] / m[c * n + c];
      for (int j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

bool next_combination(std::vector<long>& idx, long limit) {
  const int m = static_cast<int>(idx.size());
  for (int i = m - 1; i >= 0; --i) {
    if (idx[i] < limit - (m - 1 - i)) {
      ++idx[i];
      for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t count_total_minors(long max_idx, int r) {
  // sum over sizes of C(I+1, m)^2, saturating
  long double total = 0;
  for (int m = 1; m <= r; ++m) {
    long double c = 1;
    for (int i = 0; i < m; ++i) c = c * static_cast<long double>(max_idx + 1 - i) / (i + 1);
    total += c * c;
    if (total > 1e18L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

template <typename T>
struct MinorEval {
  const std::vector<T>& terms;
  const EpsPolicy& eps;
  double entry_scale;

  // det of the (rows, cols) minor; reports pass/fail against the size-scaled eps
  bool evaluate(const std::vector<long>& rows, const std::vector<long>& cols, double& det_out) const {
    const int n = static_cast<int>(rows.size());
    std::vector<T> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i * n + j] = toeplitz_entry(terms, rows[i], cols[j]);
    const T det = det_inplace(m, n);
    det_out = to_double(det);
    if constexpr (std::is_same_v<T, Rational>) {
      return det >= 0;
    } else {
      const double tol = eps.snap_eps(std::pow(std::max(entry_scale, 1e-300), n));
      return det_out >= -tol;
    }
  }
};

template <typename T>
TpReport tp_impl(const std::vector<T>& terms, int r, const EpsPolicy& eps, const TpBudget& budget,
                 long K) {
  TpReport report;
  const long max_idx = std::min(K, budget.max_index);
  if (max_idx + 1 < r)
    throw std::invalid_argument("totally_positive_up_to: window too short to form r x r minors");

  std::vector<double> dbl;
  dbl.reserve(terms.size());
  for (const auto& t : terms) dbl.push_back(to_double(t));
  MinorEval<T> eval{terms, eps, max_abs(dbl)};

  report.minors_total = count_total_minors(max_idx, r);
  const bool exhaustive = r <= budget.max_minor_size && report.minors_total <= budget.max_minors;
  report.exhaustive = exhaustive;
  report.budget_exceeded = !exhaustive;
  report.seed = budget.seed;

  double det = 0.0;
  if (exhaustive) {
    for (int m = 1; m <= r && report.passed; ++m) {
      std::vector<long> rows(m);
      for (int i = 0; i < m; ++i) rows[i] = i;
      do {
        std::vector<long> cols(m);
        for (int i = 0; i < m; ++i) cols[i] = i;
        do {
          ++report.minors_checked;
          if (!eval.evaluate(rows, cols, det)) {
            report.passed = false;
            report.witness = TpWitness{rows, cols, det};
            break;
          }
        } while (next_combination(cols, max_idx));
        if (!report.passed) break;
      } while (next_combination(rows, max_idx));
    }
  } else {
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<int> size_dist(1, r);
    std::vector<long> pool(max_idx + 1);
    for (long i = 0; i <= max_idx; ++i) pool[i] = i;
    auto draw = [&](int m) {
      std::vector<long> p = pool;
      for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<long> d(i, max_idx);
        std::swap(p[i], p[d(rng)]);
      }
      std::vector<long> out(p.begin(), p.begin() + m);
      std::sort(out.begin(), out.end());
      return out;
    };
    for (std::uint64_t it = 0; it < budget.sample_count; ++it) {
      const int m = size_dist(rng);
      const auto rows = draw(m);
      const auto cols = draw(m);
      ++report.minors_checked;
      if (!eval.evaluate(rows, cols, det)) {
        report.passed = false;
        report.witness = TpWitness{rows, cols, det};
        break;
      }
    }
  }
  report.coverage = report.minors_total == 0
                        ? 1.0
                        : std::min(1.0, static_cast<double>(report.minors_checked) /
                                            static_cast<double>(report.minors_total));
  return report;
}

} // namespace

CmReport completely_monotone_up_to(const FiniteSeq& seq, int N, const EpsPolicy& eps, ArithMode mode) {
  seq.validate();
  require_order_fits(seq, N);
  if (mode == ArithMode::Rational) return cm_impl(seq.exact_view(), N, eps);
  return cm_impl(seq.terms, N, eps);
}

TpReport totally_positive_up_to(const FiniteSeq& seq, int r, const EpsPolicy& eps, ArithMode mode,
                                const TpBudget& budget) {
  seq.validate();
  if (r < 1) throw std::domain_error("totally_positive_up_to: r must be >= 1");
  if (mode == ArithMode::Rational) return tp_impl(seq.exact_view(), r, eps, budget, seq.last_index());
  return tp_impl(seq.terms, r, eps, budget, seq.last_index());
}

BellReport bell_shaped_up_to(const FiniteSeq& seq, int N, const EpsPolicy& eps, ArithMode mode) {
  seq.validate();
  require_order_fits(seq, N);
  if (mode == ArithMode::Rational) return bell_impl(seq.exact_view(), N, eps);
  return bell_impl(seq.terms, N, eps);
}

WhaleReport whale_order_up_to(const FiniteSeq& seq, int N, int dmax, const EpsPolicy& eps,
                              ArithMode mode) {
  seq.validate();
  require_order_fits(seq, N);
  if (dmax < 0) throw std::domain_error("whale_order_up_to: dmax must be >= 0");
  if (mode == ArithMode::Rational) return whale_impl(seq.exact_view(), N, dmax, eps);
  return whale_impl(seq.terms, N, dmax, eps);
}

DecayDiagnostic decay_diagnostic(const FiniteSeq& seq, int order) {
  seq.validate();
  if (order < 0) throw std::domain_error("decay_diagnostic: negative order");
  if (2 * order > seq.last_index())
    throw std::invalid_argument("decay_diagnostic: order must be <= K/2");
  const Window<double> row = difference_row(seq, order);
  const long hi = row.last_index();
  const long span = hi - row.first_index + 1;
  long begin = hi - (span + 2) / 3 + 1;
  begin = std::max(begin, 1L);

  DecayDiagnostic diag;
  diag.order = order;
  diag.region_begin = begin;
  diag.nonincreasing = true;
  for (long k = begin; k <= hi; ++k) {
    const double g = std::pow(static_cast<double>(k), order) * row.at_index(k);
    diag.magnitudes.push_back(std::fabs(g));
    diag.max_abs = std::max(diag.max_abs, std::fabs(g));
  }
  for (std::size_t i = 0; i + 1 < diag.magnitudes.size(); ++i)
    if (diag.magnitudes[i + 1] > diag.magnitudes[i] * (1.0 + 1e-9) + 1e-300)
      diag.nonincreasing = false;
  return diag;
}

} // namespace bellseq
