#pragma once

#include "bellseq/phi.hpp"
#include "bellseq/quadrature.hpp"
#include "bellseq/sequence.hpp"

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bellseq {

/// Geometric tail-ratio estimate for a coefficient window; drives the
/// truncation error bound reported by eval_from_coeffs.
struct TailEstimate {
  double rho = 0.0;
  bool valid = false;
};

TailEstimate estimate_tail_ratio(const FiniteSeq& seq);

struct CoeffEval {
  std::complex<double> value;
  double tail_bound;  // +inf when no valid tail metadata is available
};

/// Horner evaluation of the window polynomial. |x| < 1 is always allowed;
/// |x| >= 1 requires valid tail metadata with rho*|x| < 1.
CoeffEval eval_from_coeffs(const FiniteSeq& seq, std::complex<double> x,
                           std::optional<TailEstimate> tail = std::nullopt);

double eval_from_coeffs_real(const FiniteSeq& seq, double x);

/// Exponent b x + c + int (1/(s-x) - s/(1+s^2)) phi(s) ds with closed-form
/// step contributions and adaptive quadrature for the analytic parts.
/// Requires x off the cuts (-inf, 0] and [1, inf).
std::complex<double> phi_exponent(const PhiSpec& spec, std::complex<double> x,
                                  QuadStats* stats = nullptr);

std::complex<double> eval_from_phi(const PhiSpec& spec, std::complex<double> x,
                                   QuadStats* stats = nullptr);

/// Adjust spec.c so that the profile model reproduces log F(x0) of the
/// given coefficient window at x0 = 1/2. Returns the applied shift.
double normalize_c_to_coeffs(PhiSpec& spec, const FiniteSeq& coeffs, double x0 = 0.5);

/// Exact compensator: the c making the profile of phi_from_pf(params)
/// evaluate to the product generating function of params.
double stieltjes_c_shift(const PFParams& params);

/// Moment window A(k) = sum_j a(j)/(j+k+1); `shifted` selects the
/// variant sum_j a(j) (1/(j+k+1) - 1/(j+1)) for non-summable windows.
double moment_value(const FiniteSeq& seq, long k, bool shifted = false);
Rational moment_value_exact(const FiniteSeq& seq, long k, bool shifted = false);
double moment_tail_bound(const FiniteSeq& seq, long k, const TailEstimate& tail);

enum class PostMode { Integral, ExactDelta };

struct PostResult {
  double estimate = 0.0;
  long j = 0;  // floor(n x / (1 - x))
  long k = 0;  // n + j
  double quad_error = 0.0;
  bool converged = true;
};

/// Scaled iterated-difference inversion of the moment window at x:
/// (n+j+1) C(n+j, n) (-1)^n Delta^n A(j). ExactDelta runs in exact
/// rationals (requires an exact window and n <= exact_order_bound);
/// Integral uses the cancellation-free identity
/// (k+1) C(k, j) int x^j (1-x)^n F(x) dx with log-gamma weights.
PostResult post_inversion(const FiniteSeq& seq, double x, int n, PostMode mode,
                          int exact_order_bound = 30);

Rational post_inversion_exact_value(const FiniteSeq& seq, double x, int n,
                                    int exact_order_bound = 30);

/// Evaluable generating function backed by either a coefficient window or
/// a step/density profile.
class GenFunModel {
public:
  static GenFunModel from_coeffs(FiniteSeq seq);
  static GenFunModel from_phi(PhiSpec spec);

  std::complex<double> value(std::complex<double> z) const;
  bool phi_backed() const { return std::holds_alternative<PhiSpec>(backing_); }
  const PhiSpec* phi() const { return std::get_if<PhiSpec>(&backing_); }
  const FiniteSeq* coeffs() const { return std::get_if<FiniteSeq>(&backing_); }
  const TailEstimate& tail() const { return tail_; }

private:
  std::variant<FiniteSeq, PhiSpec> backing_;
  TailEstimate tail_;
};

struct PhiRecovery {
  double estimate = 0.0;
  std::vector<std::pair<double, double>> rungs;  // (t, unwrapped arg / pi)
  bool ok = false;
  std::string message;
};

/// Boundary-limit estimate of the profile at s: continuous argument of
/// F along a path from the real anchor 0.5 to s + it (phase unwrapped by
/// halving steps until adjacent jumps stay below pi/2), then first-order
/// extrapolation of t -> 0 on the last two ladder rungs.
PhiRecovery phi_recover(const GenFunModel& model, double s,
                        std::vector<double> t_ladder = {});

} // namespace bellseq
