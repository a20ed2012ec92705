#pragma once

#include "bellseq/sequence.hpp"

#include <random>
#include <vector>

namespace bellseq {

/// Finite measure on [0,1]: point masses plus a piecewise-constant density.
/// Values are kept as exact rationals so moment windows can be exact.
struct HausdorffMeasure {
  struct Atom {
    Rational location;  // in [0, 1]
    Rational weight;    // > 0
  };
  std::vector<Atom> atoms;
  std::vector<Rational> density_breaks;  // increasing, in [0, 1]; size = levels.size() + 1 (or empty)
  std::vector<Rational> density_levels;  // nonnegative

  bool atom_at_one() const;
  Rational total_mass() const;
  void validate() const;

  static HausdorffMeasure point_mass(const Rational& location, const Rational& weight = 1);
  static HausdorffMeasure lebesgue();  // density 1 on [0, 1]
};

/// Parameters (b, c, {p_m}, {q_m}) of the product generating function
/// e^{bx+c} * prod (1 + q_m x) / (1 - p_m x); finite factor lists only.
struct PFParams {
  double b = 0.0;
  double c = 0.0;
  std::vector<Rational> p;  // each in [0, 1): summable sequence
  std::vector<Rational> q;  // each >= 0

  void validate() const;
  bool exact_eligible() const { return b == 0.0 && c == 0.0; }

  static PFParams geometric(const Rational& ratio);
  static PFParams bernoulli(const Rational& q);
  static PFParams poisson(double rate);  // b = rate, c = -rate
};

/// Moment window a(k) = sum w s^k + int s^k density(s) ds, k = 0..K.
FiniteSeq cm_from_measure(const HausdorffMeasure& mu, long K, ArithMode mode = ArithMode::Float64);

/// Power-series window of e^{bx+c} prod (1+q_m x)/(1-p_m x); Rational mode
/// requires b = c = 0.
FiniteSeq pf_from_params(const PFParams& params, long K, ArithMode mode = ArithMode::Float64);

/// pmf window of the negative binomial ((1-p)/(1-px))^lambda.
FiniteSeq negative_binomial(double p, double lambda, long K);

/// Coefficient window of exp(-lambda (1-x)^nu), nu in (0, 1].
FiniteSeq discrete_stable(double lambda, double nu, long K);

/// convolve(pf_from_params, cm_from_measure): the canonical generator of
/// test cases that must never be refuted by the bell classifier. Rejects
/// measures with an atom at 1 (the factor would not converge to zero).
FiniteSeq bell_from_factors(const PFParams& pf, const HausdorffMeasure& mu, long K,
                            ArithMode mode = ArithMode::Float64);

/// Reproducible random factor pair: up to 3 p's ~ U(0.1, 0.9), up to 3
/// q's ~ U(0, 2), b ~ U(0, 3), 1-3 atoms in [0, 0.95] plus an optional
/// uniform density slab.
struct BellFactorSample {
  PFParams pf;
  HausdorffMeasure mu;
};
BellFactorSample sample_bell_factors(std::mt19937_64& rng);

} // namespace bellseq
