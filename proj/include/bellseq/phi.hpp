#pragma once

#include "bellseq/constructors.hpp"
#include "bellseq/sequence.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bellseq {

/// Step-and-density profile on the real line that drives the exponential
/// integral representation of a generating function: integer steps on the
/// negative axis, zero on [0, 1], an increasing-after-rounding part on
/// (1, inf).
struct PhiSpec {
  double b = 0.0;
  double c = 0.0;

  /// v_1 <= ... <= v_m < 0; the profile equals #{m : s < v_m} on (-inf, 0).
  std::vector<Rational> neg_thresholds;

  /// Unit steps: value(s) = #{m : s > w_m}, all w_m > 1.
  struct Steps {
    std::vector<Rational> thresholds;
  };
  /// Piecewise-constant total value: 0 on (1, breaks[0]], levels[i] on
  /// (breaks[i], breaks[i+1]], last level extends to infinity.
  struct Piecewise {
    std::vector<double> breaks;  // increasing, all >= 1
    std::vector<double> levels;  // nonnegative, same length as breaks
  };
  /// value(s) = (lambda/pi) sin(nu pi) (s-1)^nu on (1, inf).
  struct PowerLaw {
    double lambda = 1.0;
    double nu = 0.5;
    double amplitude() const;
  };
  using PosPart = std::variant<Steps, Piecewise, PowerLaw>;
  PosPart pos = Steps{};

  std::vector<double> declared_points_of_increase;  // optional certificate

  double operator()(double s) const;  // profile value anywhere
  double pos_value(double s) const;   // on (1, inf)
  double neg_value(double s) const;   // on (-inf, 0)

  /// Syntactic invariants (threshold ordering, ranges); throws on failure.
  void validate_shape() const;

  /// Upper cutoff S so that the tail above S contributes < tail_tol to
  /// the integral of value(s)/s^2.
  double pos_tail_cutoff(double tail_tol = 1e-10) const;
};

struct PhiConditionReport {
  bool neg_integer_steps = false;       // decreasing integer-valued on (-inf, 0)
  bool zero_on_unit_interval = false;   // identically zero on [0, 1]
  bool increasing_after_rounding = false;
  bool tail_integrable = false;         // value(s)/s^2 integrable at +-inf
  bool nonintegrable_near_one = false;  // (1 - value(s))/(s - 1) diverges at 1+
  bool passed = false;
  std::string detail;
};

/// Checks the five representation conditions on certified sample grids
/// (geometric grid, refined until the verdict stabilizes twice).
PhiConditionReport validate_phi(const PhiSpec& spec);

struct IarReport {
  bool ok = true;
  int violating_level = 0;             // the integer n witnessing failure
  std::vector<std::size_t> witness;    // sample indices of the violating pattern
};

/// Sampled test of the increasing-after-rounding property: for every
/// integer n the sampled values minus n may change sign at most once,
/// and only from negative to positive.
IarReport increasing_after_rounding(std::span<const std::pair<double, double>> samples);

struct PhiDecomposition {
  PFParams pf;                       // b, c carried; p = 1/w, q = -1/v
  std::vector<Rational> pos_steps;   // thresholds of the integer part on (1, inf)
  std::vector<double> frac_breaks;   // fractional remainder, piecewise-constant
  std::vector<double> frac_levels;   // values in [0, 1]; empty lists = zero
};

/// Split the profile into an integer step part (mapped to product-factor
/// parameters) and a [0,1]-valued remainder. Thresholds are the leftmost
/// admissible points; if the integer part cannot vanish in a right
/// neighbourhood of 1 the first threshold is shifted right, and specs
/// exceeding 1 on every right neighbourhood of 1 are rejected.
PhiDecomposition decompose_phi(const PhiSpec& spec);

/// Profile of a product generating function: thresholds -1/q_m and 1/p_m.
PhiSpec phi_from_pf(const PFParams& params);

/// Piecewise value of the decomposition remainder at s (helper for tests).
double decomposition_frac_value(const PhiDecomposition& d, double s);

} // namespace bellseq
