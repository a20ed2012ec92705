#include "bellseq/phi.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_helpers.hpp"

using namespace bellseq;
using testutil::R;

namespace {

PhiSpec negbin_spec(double lambda, double p) {
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.0 / p};
  pw.levels = {lambda};
  spec.pos = pw;
  return spec;
}

PhiSpec power_law_spec(double lambda, double nu) {
  PhiSpec spec;
  spec.pos = PhiSpec::PowerLaw{lambda, nu};
  return spec;
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

TEST_CASE("profile evaluation") {
  PhiSpec spec;
  spec.neg_thresholds = {R(-3), R(-1)};
  spec.pos = PhiSpec::Steps{{R(2), R(3)}};
  CHECK(spec(-4.0) == 2.0);
  CHECK(spec(-2.0) == 1.0);
  CHECK(spec(-0.5) == 0.0);
  CHECK(spec(0.0) == 0.0);
  CHECK(spec(0.7) == 0.0);
  CHECK(spec(1.0) == 0.0);
  CHECK(spec(2.5) == 1.0);
  CHECK(spec(7.0) == 2.0);
}

TEST_CASE("validate: negative binomial profile passes every condition") {
  const auto report = validate_phi(negbin_spec(2.0, 0.5));
  CHECK(report.neg_integer_steps);
  CHECK(report.zero_on_unit_interval);
  CHECK(report.increasing_after_rounding);
  CHECK(report.tail_integrable);
  CHECK(report.nonintegrable_near_one);
  CHECK(report.passed);
}

TEST_CASE("validate: discrete-stable power law passes every condition") {
  const auto report = validate_phi(power_law_spec(1.0, 0.5));
  CHECK(report.passed);
}

TEST_CASE("validate: step profile of a product generating function passes") {
  PFParams params;
  params.p = {R(1, 2), R(1, 3)};
  params.q = {R(1)};
  const auto report = validate_phi(phi_from_pf(params));
  CHECK(report.passed);
}

TEST_CASE("validate: dip below an integer level breaks rounding monotonicity") {
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.5, 2.0, 3.0};
  pw.levels = {2.0, 0.9, 2.0};
  spec.pos = pw;
  const auto report = validate_phi(spec);
  CHECK_FALSE(report.increasing_after_rounding);
  CHECK_FALSE(report.passed);
}

TEST_CASE("validate: a bump that stays inside one integer band is accepted") {
  // 2 / 1 / 2 is sandwiched by the constant integer certificate 1, so the
  // rounding condition holds even though the raw values dip
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.5, 2.0, 3.0};
  pw.levels = {2.0, 1.0, 2.0};
  spec.pos = pw;
  CHECK(validate_phi(spec).increasing_after_rounding);
}

TEST_CASE("validate: constant level 1 kills the divergence condition") {
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.0};
  pw.levels = {1.0};
  spec.pos = pw;
  const auto report = validate_phi(spec);
  CHECK_FALSE(report.nonintegrable_near_one);
  CHECK_FALSE(report.passed);
}

TEST_CASE("increasing_after_rounding on raw samples") {
  SUBCASE("monotone samples pass") {
    std::vector<std::pair<double, double>> samples;
    for (double s = 1.1; s < 9.0; s += 0.25) samples.emplace_back(s, 0.3 * (s - 1.0));
    CHECK(increasing_after_rounding(samples).ok);
  }
  SUBCASE("constructed violation: witness at level 1") {
    const std::vector<std::pair<double, double>> samples{{1.5, 0.4}, {2.0, 1.2}, {3.0, 0.9}};
    const auto report = increasing_after_rounding(samples);
    CHECK_FALSE(report.ok);
    CHECK(report.violating_level == 1);
    REQUIRE(report.witness.size() >= 2);
  }
  SUBCASE("power-law samples on a wide grid pass") {
    std::vector<std::pair<double, double>> samples;
    const double amp = 1.0 / std::numbers::pi;  // lambda = 1, nu = 1/2
    for (double s = 1.1; s < 50.0; s *= 1.07)
      samples.emplace_back(s, amp * std::sqrt(s - 1.0));
    CHECK(increasing_after_rounding(samples).ok);
  }
  SUBCASE("unsorted input is an error") {
    const std::vector<std::pair<double, double>> samples{{2.0, 0.1}, {1.5, 0.2}};
    CHECK_THROWS_AS(increasing_after_rounding(samples), std::invalid_argument);
  }
}

TEST_CASE("decompose: pure step of height two") {
  PhiSpec spec;
  spec.pos = PhiSpec::Steps{{R(3), R(3)}};
  const auto d = decompose_phi(spec);
  REQUIRE(d.pf.p.size() == 2);
  CHECK(d.pf.p[0] == R(1, 3));
  CHECK(d.pf.p[1] == R(1, 3));
  CHECK(d.frac_levels.empty());
}

TEST_CASE("decompose: fractional step splits into floor plus remainder") {
  // height 2.5 at 1/p = 2: steps (2, 2), remainder 0.5 beyond 2
  const auto d = decompose_phi(negbin_spec(2.5, 0.5));
  REQUIRE(d.pf.p.size() == 2);
  CHECK(d.pf.p[0] == R(1, 2));
  CHECK(d.pf.p[1] == R(1, 2));
  CHECK(decomposition_frac_value(d, 1.5) == 0.0);
  CHECK(decomposition_frac_value(d, 2.5) == doctest::Approx(0.5));
  CHECK(decomposition_frac_value(d, 100.0) == doctest::Approx(0.5));
}

TEST_CASE("decompose: trivial profile gives the empty factor set") {
  PhiSpec spec;  // identically zero
  const auto d = decompose_phi(spec);
  CHECK(d.pf.p.empty());
  CHECK(d.pf.q.empty());
  CHECK(d.pos_steps.empty());
}

TEST_CASE("decompose: recomposition matches the profile on a grid") {
  const auto spec = negbin_spec(2.5, 0.5);
  const auto d = decompose_phi(spec);
  for (double s = 1.01; s < 40.0; s *= 1.13) {
    double phi1 = 0.0;
    for (const auto& t : d.pos_steps)
      if (s > to_double(t)) phi1 += 1.0;
    const double phi2 = decomposition_frac_value(d, s);
    CHECK(phi1 + phi2 == doctest::Approx(spec.pos_value(s)).epsilon(1e-12));
    CHECK(phi2 >= 0.0);
    CHECK(phi2 <= 1.0);
  }
}

TEST_CASE("decompose: level-1 plateau adjacent to 1 shifts into the remainder") {
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.0, 2.0};
  pw.levels = {1.0, 2.5};
  spec.pos = pw;
  const auto d = decompose_phi(spec);
  // the first threshold moves right to 2, where the running level crosses 1
  REQUIRE(d.pos_steps.size() == 2);
  CHECK(to_double(d.pos_steps[0]) == 2.0);
  CHECK(to_double(d.pos_steps[1]) == 2.0);
  CHECK(decomposition_frac_value(d, 1.5) == doctest::Approx(1.0));
  CHECK(decomposition_frac_value(d, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("decompose: profile above 1 near 1 is rejected with a diagnosis") {
  PhiSpec spec;
  PhiSpec::Piecewise pw;
  pw.breaks = {1.0};
  pw.levels = {1.5};
  spec.pos = pw;
  CHECK_THROWS_AS(decompose_phi(spec), std::domain_error);
}

TEST_CASE("decompose: unbounded power law is rejected") {
  CHECK_THROWS_AS(decompose_phi(power_law_spec(1.0, 0.5)), std::domain_error);
}

TEST_CASE("profile of product parameters") {
  SUBCASE("single geometric factor") {
    const auto spec = phi_from_pf(PFParams::geometric(R(1, 2)));
    CHECK(spec(1.5) == 0.0);
    CHECK(spec(2.5) == 1.0);
    CHECK(spec(-1.0) == 0.0);
  }
  SUBCASE("single bernoulli factor") {
    const auto spec = phi_from_pf(PFParams::bernoulli(R(1)));
    CHECK(spec(-0.5) == 0.0);
    CHECK(spec(-1.5) == 1.0);
    CHECK(spec(3.0) == 0.0);
  }
  SUBCASE("two geometric factors: steps at 2 and 3") {
    PFParams params;
    params.p = {R(1, 2), R(1, 3)};
    const auto spec = phi_from_pf(params);
    CHECK(spec(2.5) == 1.0);
    CHECK(spec(3.5) == 2.0);
    CHECK(spec.declared_points_of_increase == std::vector<double>{2.0, 3.0});
    CHECK(validate_phi(spec).passed);
  }
}

TEST_CASE("round trip: factor parameters survive decompose(phi_from_pf(.))") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> num(1, 30);
  for (int trial = 0; trial < 40; ++trial) {
    PFParams params;
    const int np = static_cast<int>(num(rng)) % 4;
    const int nq = static_cast<int>(num(rng)) % 4;
    for (int i = 0; i < np; ++i) {
      const long n = num(rng), d = num(rng) + 30;
      params.p.emplace_back(n, d);  // n/d < 1
    }
    for (int i = 0; i < nq; ++i) params.q.emplace_back(num(rng), num(rng));
    const auto recovered = decompose_phi(phi_from_pf(params)).pf;
    CHECK(sorted(params.p) == sorted(recovered.p));
    CHECK(sorted(params.q) == sorted(recovered.q));
  }
}
