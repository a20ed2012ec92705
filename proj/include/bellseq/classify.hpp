#pragma once

#include "bellseq/sign_changes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bellseq {

enum class OrderVerdict { ExactN, TooMany, TailUncertain };

const char* to_string(OrderVerdict v);

struct OrderEvidence {
  int order = 0;
  int sign_changes = 0;
  OrderVerdict verdict = OrderVerdict::TailUncertain;
  bool saturated = false;
};

enum class BellOverall { ConsistentWithBell, Refuted, Inconclusive };

const char* to_string(BellOverall v);

/// Window-qualified bell-shape evidence: only refutation is definitive,
/// consistency means every checked order witnessed exactly n settled flips.
struct BellReport {
  int max_order_checked = 0;
  std::vector<OrderEvidence> per_order;
  BellOverall overall = BellOverall::Inconclusive;
  int refuted_order = -1;  // valid when overall == Refuted
};

struct CmViolation {
  int order = 0;
  long index = 0;
  double value = 0.0;  // the offending (-1)^n Delta^n a(k)
};

struct CmReport {
  bool passed = false;
  int max_order_checked = 0;
  std::optional<CmViolation> first_violation;
};

struct TpWitness {
  std::vector<long> rows, cols;
  double det = 0.0;
};

struct TpBudget {
  int max_minor_size = 4;
  long max_index = 12;
  std::uint64_t max_minors = 600000;   // beyond this, switch to sampling
  std::uint64_t sample_count = 200000;
  std::uint64_t seed = 0x5eed;
};

struct TpReport {
  bool passed = true;
  bool exhaustive = true;
  bool budget_exceeded = false;
  std::uint64_t minors_checked = 0;
  std::uint64_t minors_total = 0;
  double coverage = 1.0;
  std::uint64_t seed = 0;
  std::optional<TpWitness> witness;
};

struct WhaleCandidate {
  enum class Verdict { Consistent, Refuted, Uncertain };
  int d = 0;
  Verdict verdict = Verdict::Uncertain;
  int refuted_at_order = -1;
  std::vector<OrderEvidence> per_order;
};

const char* to_string(WhaleCandidate::Verdict v);

struct WhaleReport {
  std::optional<int> order_estimate;  // empty: exceeds dmax or not determinable
  bool exceeds_dmax = false;
  bool positivity_failed = false;
  long positivity_witness = -1;  // index of the offending entry
  std::vector<WhaleCandidate> per_d;
};

struct DecayDiagnostic {
  int order = 0;
  long region_begin = 0;  // first k of the inspected tail third
  double max_abs = 0.0;   // max |k^n Delta^n a(k)| there
  bool nonincreasing = false;
  std::vector<double> magnitudes;
  // heuristic evidence only; says nothing about the unseen tail
};

/// (-1)^n Delta^n a(k) >= -eps for all n <= N and k in [0, K-n].
CmReport completely_monotone_up_to(const FiniteSeq& seq, int N, const EpsPolicy& eps,
                                   ArithMode mode = ArithMode::Float64);

/// Minors of the Toeplitz matrix (a(k-l)), sizes <= r, indices in
/// [0, min(K, budget.max_index)]; exhaustive within budget, otherwise
/// seeded random sampling with reported coverage.
TpReport totally_positive_up_to(const FiniteSeq& seq, int r, const EpsPolicy& eps,
                                ArithMode mode = ArithMode::Float64, const TpBudget& budget = {});

BellReport bell_shaped_up_to(const FiniteSeq& seq, int N, const EpsPolicy& eps,
                             ArithMode mode = ArithMode::Float64);

/// Smallest d in [0, dmax] whose per-order evidence (rows restricted to
/// k >= -d, min(n,d) flips, settled sign (-1)^n) is complete.
WhaleReport whale_order_up_to(const FiniteSeq& seq, int N, int dmax, const EpsPolicy& eps,
                              ArithMode mode = ArithMode::Float64);

DecayDiagnostic decay_diagnostic(const FiniteSeq& seq, int order);

} // namespace bellseq
