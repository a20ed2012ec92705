#include "bellseq/genfun.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

#include "bellseq/constructors.hpp"
#include "test_helpers.hpp"

using namespace bellseq;
using testutil::R;

namespace {

FiniteSeq geometric_window(double ratio, long K) {
  std::vector<double> terms(K + 1);
  terms[0] = 1.0;
  for (long k = 1; k <= K; ++k) terms[k] = terms[k - 1] * ratio;
  return FiniteSeq(std::move(terms));
}

double negbin_closed_form(double p, double lambda, double x) {
  return std::pow((1.0 - p) / (1.0 - p * x), lambda);
}

} // namespace

TEST_CASE("coefficient evaluation") {
  SUBCASE("geometric(1/2) at 1/2 is 4/3 within the reported tail bound") {
    const auto seq = geometric_window(0.5, 60);
    const auto result = eval_from_coeffs(seq, 0.5);
    CHECK(std::fabs(result.value.real() - 4.0 / 3.0) <= result.tail_bound + 1e-15);
    CHECK(result.tail_bound < 1e-30);
  }
  SUBCASE("identity window evaluates to 1 everywhere") {
    const FiniteSeq e(std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(eval_from_coeffs(e, {0.3, 0.7}).value == std::complex<double>(1.0, 0.0));
    CHECK(eval_from_coeffs(e, {2.0, 0.0}).value == std::complex<double>(1.0, 0.0));  // rho = 0
  }
  SUBCASE("negative binomial window matches the closed form at 0.9") {
    const auto seq = negative_binomial(0.5, 2.0, 200);
    const double expected = negbin_closed_form(0.5, 2.0, 0.9);  // (0.5/0.55)^2
    CHECK(eval_from_coeffs_real(seq, 0.9) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.826446280991735).epsilon(1e-12));
  }
  SUBCASE("outside the disk without tail metadata is an error") {
    const FiniteSeq noisy(std::vector<double>{1.0, -2.0, 3.0, -4.0, 5.0, -6.0});
    CHECK_THROWS_AS(eval_from_coeffs(noisy, {1.5, 0.0}), std::domain_error);
  }
  SUBCASE("valid tail metadata extends the domain to |x| < 1/rho") {
    const auto seq = geometric_window(0.5, 80);
    const auto est = estimate_tail_ratio(seq);
    CHECK(est.valid);
    CHECK(est.rho == doctest::Approx(0.5).epsilon(1e-12));
    const auto result = eval_from_coeffs(seq, {1.5, 0.0});
    CHECK(result.value.real() == doctest::Approx(4.0).epsilon(1e-9));  // 1/(1 - 0.75)
    CHECK_THROWS_AS(eval_from_coeffs(seq, {2.5, 0.0}), std::domain_error);
  }
  SUBCASE("monotone on (0,1) for nonnegative windows") {
    const auto seq = negative_binomial(0.3, 1.7, 120);
    double prev = eval_from_coeffs_real(seq, 0.05);
    for (double x = 0.1; x < 0.95; x += 0.05) {
      const double cur = eval_from_coeffs_real(seq, x);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("profile evaluation of generating functions") {
  SUBCASE("empty profile with b = c = 0 is identically 1") {
    PhiSpec spec;
    for (double x : {0.1, 0.5, 0.9}) {
      const auto value = eval_from_phi(spec, {x, 0.0});
      CHECK(value.real() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(value.imag() == doctest::Approx(0.0));
    }
  }
  SUBCASE("geometric profile with matched c evaluates to 4/3 at 1/2") {
    PhiSpec spec = phi_from_pf(PFParams::geometric(R(1, 2)));
    spec.c += stieltjes_c_shift(PFParams::geometric(R(1, 2)));
    const auto value = eval_from_phi(spec, {0.5, 0.0});
    CHECK(value.real() == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  }
  SUBCASE("x on a cut is rejected") {
    PhiSpec spec = phi_from_pf(PFParams::geometric(R(1, 2)));
    CHECK_THROWS_AS(eval_from_phi(spec, {1.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval_from_phi(spec, {-0.5, 0.0}), std::domain_error);
  }
  SUBCASE("step height lambda with c = lambda log(1-p) - (lambda/2) log(1+p^2)") {
    // the lambda/2 factor is forced by the antiderivative of s/(1+s^2);
    // with it, the piecewise profile reproduces ((1-p)/(1-px))^lambda
    const double lambda = 2.0, p = 0.5;
    PhiSpec spec;
    PhiSpec::Piecewise pw;
    pw.breaks = {1.0 / p};
    pw.levels = {lambda};
    spec.pos = pw;
    spec.c = lambda * std::log(1.0 - p) - 0.5 * lambda * std::log1p(p * p);
    for (double x = 0.1; x < 0.95; x += 0.1) {
      const auto value = eval_from_phi(spec, {x, 0.0});
      CHECK(value.real() == doctest::Approx(negbin_closed_form(p, lambda, x)).epsilon(1e-10));
    }
    // the same constant without the 1/2 misses by far more than the
    // acceptance tolerance, so the convention is not interchangeable
    PhiSpec wrong = spec;
    wrong.c = lambda * std::log(1.0 - p) - lambda * std::log1p(p * p);
    const auto off = eval_from_phi(wrong, {0.5, 0.0});
    CHECK(std::fabs(off.real() - negbin_closed_form(p, lambda, 0.5)) > 1e-3);
  }
  SUBCASE("x0-normalization pins the constant for any profile") {
    const auto seq = negative_binomial(0.5, 2.5, 300);
    PhiSpec spec;
    PhiSpec::Piecewise pw;
    pw.breaks = {2.0};
    pw.levels = {2.5};
    spec.pos = pw;
    normalize_c_to_coeffs(spec, seq);
    for (double x = 0.1; x < 0.95; x += 0.1) {
      const auto value = eval_from_phi(spec, {x, 0.0});
      CHECK(value.real() ==
            doctest::Approx(negbin_closed_form(0.5, 2.5, x)).epsilon(1e-8));
    }
  }
  SUBCASE("product profile with negative steps and drift matches coefficients") {
    PFParams params;
    params.b = 1.0;
    params.p = {R(1, 2)};
    params.q = {R(1)};
    const auto seq = pf_from_params(params, 250);
    PhiSpec spec = phi_from_pf(params);
    const double shift = normalize_c_to_coeffs(spec, seq);
    // the closed-form compensator agrees with the x0 fit
    CHECK(shift == doctest::Approx(stieltjes_c_shift(params)).epsilon(1e-9));
    for (double x = 0.1; x < 0.95; x += 0.1) {
      const auto value = eval_from_phi(spec, {x, 0.0});
      CHECK(value.real() == doctest::Approx(eval_from_coeffs_real(seq, x)).epsilon(1e-8));
    }
  }
  SUBCASE("power-law profile: quadrature against the coefficient window") {
    const auto seq = discrete_stable(1.0, 0.5, 400);
    PhiSpec spec;
    spec.pos = PhiSpec::PowerLaw{1.0, 0.5};
    normalize_c_to_coeffs(spec, seq);
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto value = eval_from_phi(spec, {x, 0.0});
      CHECK(value.real() == doctest::Approx(eval_from_coeffs_real(seq, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("moment windows") {
  SUBCASE("identity sequence: A(k) = 1/(k+1)") {
    const FiniteSeq e(std::vector<Rational>{R(1), R(0), R(0), R(0)});
    for (long k = 0; k <= 6; ++k) {
      CHECK(moment_value(e, k) == doctest::Approx(1.0 / (k + 1)).epsilon(1e-15));
      CHECK(moment_value_exact(e, k) == Rational(1, k + 1));
    }
  }
  SUBCASE("geometric window: A(0) = 2 log 2") {
    const auto seq = geometric_window(0.5, 200);
    CHECK(moment_value(seq, 0) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-13));
    CHECK(moment_tail_bound(seq, 0, estimate_tail_ratio(seq)) < 1e-40);
  }
  SUBCASE("A(k) decreases in k for nonnegative windows") {
    const auto seq = negative_binomial(0.6, 1.3, 80);
    double prev = moment_value(seq, 0);
    for (long k = 1; k <= 12; ++k) {
      const double cur = moment_value(seq, k);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
  SUBCASE("shifted variant: identity gives -k/(k+1)") {
    const FiniteSeq e(std::vector<Rational>{R(1), R(0), R(0)});
    for (long k = 0; k <= 4; ++k)
      CHECK(moment_value_exact(e, k, true) == Rational(-k, k + 1));
  }
}

TEST_CASE("moment inversion") {
  SUBCASE("identity window inverts to 1 exactly in the difference mode") {
    const FiniteSeq e(std::vector<Rational>{R(1), R(0), R(0), R(0), R(0), R(0)});
    for (int n : {1, 2, 5}) {
      CHECK(post_inversion_exact_value(e, 0.4, n) == R(1));
      const auto integral = post_inversion(e, 0.4, n, PostMode::Integral);
      CHECK(integral.estimate == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
  SUBCASE("difference and integral modes agree to 1e-9 for n <= 20") {
    const FiniteSeq seq = testutil::geometric_seq(R(1, 2), 160);
    for (double x : {0.3, 0.5}) {
      for (int n = 1; n <= 20; ++n) {
        const auto exact = post_inversion(seq, x, n, PostMode::ExactDelta);
        const auto integral = post_inversion(seq, x, n, PostMode::Integral);
        CHECK(exact.j == integral.j);
        CHECK(std::fabs(exact.estimate - integral.estimate) <= 1e-9);
      }
    }
  }
  SUBCASE("error at x = 1/2 shrinks through n = 16, 64, 256") {
    const auto seq = geometric_window(0.5, 200);
    const double reference = 4.0 / 3.0;
    double prev_err = 1e9;
    for (int n : {16, 64, 256}) {
      const auto result = post_inversion(seq, 0.5, n, PostMode::Integral);
      const double err = std::fabs(result.estimate - reference);
      CHECK(err < prev_err);
      prev_err = err;
    }
    CHECK(prev_err <= 0.02);
  }
  SUBCASE("mode bound is enforced") {
    const FiniteSeq e(std::vector<Rational>{R(1), R(0), R(0)});
    CHECK_THROWS_AS(post_inversion(e, 0.5, 40, PostMode::ExactDelta), std::invalid_argument);
  }
  SUBCASE("x outside (0,1) is rejected") {
    const FiniteSeq e(std::vector<Rational>{R(1), R(0), R(0)});
    CHECK_THROWS_AS(post_inversion(e, 1.5, 4, PostMode::Integral), std::domain_error);
  }
}

TEST_CASE("limit diagnostics for the vanishing-mass criterion") {
  // (1-x) F(x) tends to the mass the measure puts at 1
  SUBCASE("no atom at 1: the product decays") {
    HausdorffMeasure mu = HausdorffMeasure::point_mass(R(1, 2));
    mu.density_breaks = {R(0), R(1)};
    mu.density_levels = {R(1)};
    const auto seq = cm_from_measure(mu, 12000);
    double prev = 1e9;
    for (double x : {0.9, 0.99, 0.999}) {
      const double value = (1.0 - x) * eval_from_coeffs_real(seq, x);
      CHECK(value < prev);
      prev = value;
    }
    CHECK(prev < 0.01);
  }
  SUBCASE("atom of mass m at 1: the product approaches m") {
    HausdorffMeasure mu;
    mu.atoms.push_back({R(1), R(3, 4)});
    mu.atoms.push_back({R(1, 3), R(1)});
    const auto seq = cm_from_measure(mu, 12000);
    const double value = (1.0 - 0.999) * eval_from_coeffs_real(seq, 0.999);
    CHECK(value == doctest::Approx(0.75).epsilon(1e-3));
  }
}

TEST_CASE("boundary recovery of the profile") {
  SUBCASE("geometric model: unit step seen from both sides") {
    const auto model = GenFunModel::from_phi(phi_from_pf(PFParams::geometric(R(1, 2))));
    const auto at_15 = phi_recover(model, 1.5);
    REQUIRE(at_15.ok);
    CHECK(std::fabs(at_15.estimate - 0.0) <= 0.05);
    const auto at_3 = phi_recover(model, 3.0);
    REQUIRE(at_3.ok);
    CHECK(std::fabs(at_3.estimate - 1.0) <= 0.05);
    const auto at_5 = phi_recover(model, 5.0);
    REQUIRE(at_5.ok);
    CHECK(std::fabs(at_5.estimate - 1.0) <= 0.05);
  }
  SUBCASE("height 2.5 needs unwrapping past the principal branch") {
    PhiSpec spec;
    PhiSpec::Piecewise pw;
    pw.breaks = {2.0};
    pw.levels = {2.5};
    spec.pos = pw;
    const auto model = GenFunModel::from_phi(spec);
    const auto result = phi_recover(model, 3.0);
    REQUIRE(result.ok);
    CHECK(std::fabs(result.estimate - 2.5) <= 0.1);
    CHECK(result.rungs.back().second > 1.0);  // raw phase already beyond pi
  }
  SUBCASE("negative-side step recovered left of zero") {
    const auto model = GenFunModel::from_phi(phi_from_pf(PFParams::bernoulli(R(1))));
    const auto result = phi_recover(model, -2.0);
    REQUIRE(result.ok);
    CHECK(std::fabs(result.estimate - 1.0) <= 0.05);
  }
  SUBCASE("s inside [0,1] is refused") {
    const auto model = GenFunModel::from_phi(phi_from_pf(PFParams::geometric(R(1, 2))));
    CHECK_FALSE(phi_recover(model, 0.5).ok);
  }
}
