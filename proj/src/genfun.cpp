#include "bellseq/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bellseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Complex = std::complex<double>;

bool on_cut(Complex x) {
  return x.imag() == 0.0 && (x.real() <= 0.0 || x.real() >= 1.0);
}

// antiderivative of 1/(s-x) - s/(1+s^2) in s, principal branches; valid
// along real-s paths that stay off the cut through x
Complex cut_antiderivative(double s, Complex x) {
  return std::log(Complex(s) - x) - 0.5 * std::log(1.0 + s * s);
}

} // namespace

TailEstimate estimate_tail_ratio(const FiniteSeq& seq) {
  const auto& a = seq.terms;
  const std::size_t n = a.size();
  TailEstimate est;
  if (n < 6) return est;

  // trailing exact zeros: the window itself claims a finished tail
  bool all_zero = true;
  for (std::size_t i = n - 4; i < n; ++i) all_zero = all_zero && a[i] == 0.0;
  if (all_zero) return {0.0, true};

  double rho_max = 0.0, rho_min = kInf;
  for (std::size_t i = n - 5; i + 1 < n; ++i) {
    if (a[i] == 0.0 || a[i + 1] == 0.0) return est;
    const double r = std::fabs(a[i + 1] / a[i]);
    rho_max = std::max(rho_max, r);
    rho_min = std::min(rho_min, r);
  }
  if (rho_max < 1.0 && rho_max - rho_min <= 0.2 * rho_max) {
    est.rho = rho_max;
    est.valid = true;
  }
  return est;
}

CoeffEval eval_from_coeffs(const FiniteSeq& seq, Complex x, std::optional<TailEstimate> tail) {
  seq.validate();
  const TailEstimate est = tail ? *tail : estimate_tail_ratio(seq);
  const double ax = std::abs(x);
  if (ax >= 1.0 && !(est.valid && est.rho * ax < 1.0))
    throw std::domain_error("eval_from_coeffs: |x| >= 1 and no valid tail metadata");

  Complex acc = 0.0;
  for (auto it = seq.terms.rbegin(); it != seq.terms.rend(); ++it) acc = acc * x + *it;

  double bound = kInf;
  if (est.valid && est.rho * ax < 1.0) {
    const double aK = std::fabs(seq.terms.back());
    bound = aK * est.rho / (1.0 - est.rho) * std::pow(ax, static_cast<double>(seq.size()));
  }
  return {acc, bound};
}

double eval_from_coeffs_real(const FiniteSeq& seq, double x) {
  double acc = 0.0;
  for (auto it = seq.terms.rbegin(); it != seq.terms.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex phi_exponent(const PhiSpec& spec, Complex x, QuadStats* stats) {
  spec.validate_shape();
  if (on_cut(x)) throw std::domain_error("phi_exponent: x lies on a cut");

  Complex exponent = spec.b * x + spec.c;

  // unit step on (-inf, v): integral is log((x - v)/sqrt(1 + v^2))
  for (const auto& vr : spec.neg_thresholds) {
    const double v = to_double(vr);
    exponent += std::log(x - v) - 0.5 * std::log1p(v * v);
  }

  if (const auto* steps = std::get_if<PhiSpec::Steps>(&spec.pos)) {
    // unit step on (w, inf): integral is log(sqrt(1 + w^2)/(w - x))
    for (const auto& wr : steps->thresholds) {
      const double w = to_double(wr);
      exponent += 0.5 * std::log1p(w * w) - std::log(w - x);
    }
  } else if (const auto* pw = std::get_if<PhiSpec::Piecewise>(&spec.pos)) {
    for (std::size_t i = 0; i < pw->breaks.size(); ++i) {
      const double level = pw->levels[i];
      if (level == 0.0) continue;
      const Complex lower = cut_antiderivative(pw->breaks[i], x);
      const Complex upper =
          i + 1 < pw->breaks.size() ? cut_antiderivative(pw->breaks[i + 1], x) : Complex(0.0);
      exponent += level * (upper - lower);
    }
  } else {
    const auto& pl = std::get<PhiSpec::PowerLaw>(spec.pos);
    const double amp = pl.amplitude();
    if (amp > 0.0) {
      const double cutoff = spec.pos_tail_cutoff(1e-12);
      // 1/(s-x) - s/(1+s^2) == (1+sx)/((s-x)(1+s^2)); the fused form stays
      // accurate where the raw difference cancels to noise for large s
      auto integrand = [amp, nu = pl.nu, x](double s) -> Complex {
        return amp * std::pow(s - 1.0, nu) * (1.0 + s * x) / ((Complex(s) - x) * (1.0 + s * s));
      };
      QuadStats local;
      QuadStats& st = stats ? *stats : local;
      Complex acc = integrate(integrand, 1.0, 2.0, st);
      double lo = 2.0;
      while (lo < cutoff) {
        const double hi = std::min(2.0 * lo, cutoff);
        acc += integrate(integrand, lo, hi, st);
        lo = hi;
      }
      exponent += acc;
    }
  }
  return exponent;
}

Complex eval_from_phi(const PhiSpec& spec, Complex x, QuadStats* stats) {
  return std::exp(phi_exponent(spec, x, stats));
}

double normalize_c_to_coeffs(PhiSpec& spec, const FiniteSeq& coeffs, double x0) {
  const double target = eval_from_coeffs_real(coeffs, x0);
  if (!(target > 0.0))
    throw std::domain_error("normalize_c_to_coeffs: coefficient model is not positive at x0");
  const Complex current = phi_exponent(spec, Complex(x0));
  const double shift = std::log(target) - current.real();
  spec.c += shift;
  return shift;
}

double stieltjes_c_shift(const PFParams& params) {
  // per q factor: int over (-inf, -1/q) contributes log(1+qx) - (1/2)log(1+q^2)
  // per p factor: int over (1/p, inf) contributes -log(1-px) + (1/2)log(1+p^2)
  double shift = 0.0;
  for (const auto& q : params.q) {
    const double qd = to_double(q);
    shift += 0.5 * std::log1p(qd * qd);
  }
  for (const auto& p : params.p) {
    const double pd = to_double(p);
    shift -= 0.5 * std::log1p(pd * pd);
  }
  return shift;
}

double moment_value(const FiniteSeq& seq, long k, bool shifted) {
  seq.validate();
  if (k < 0) throw std::domain_error("moment_value: k must be >= 0");
  double acc = 0.0;
  for (long j = static_cast<long>(seq.size()) - 1; j >= 0; --j) {
    const double base = 1.0 / static_cast<double>(j + k + 1);
    acc += seq.terms[j] * (shifted ? base - 1.0 / static_cast<double>(j + 1) : base);
  }
  return acc;
}

Rational moment_value_exact(const FiniteSeq& seq, long k, bool shifted) {
  if (k < 0) throw std::domain_error("moment_value_exact: k must be >= 0");
  const auto& a = seq.exact_view();
  Rational acc = 0;
  for (long j = 0; j < static_cast<long>(a.size()); ++j) {
    Rational weight = Rational(1, j + k + 1);
    if (shifted) weight -= Rational(1, j + 1);
    acc += a[j] * weight;
  }
  return acc;
}

double moment_tail_bound(const FiniteSeq& seq, long k, const TailEstimate& tail) {
  if (!tail.valid || tail.rho >= 1.0) return kInf;
  const double aK = std::fabs(seq.terms.back());
  const long K = seq.last_index();
  return aK * tail.rho / (1.0 - tail.rho) / static_cast<double>(K + k + 2);
}

namespace {

long post_index(double x, int n) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("post_inversion: x must lie in (0, 1)");
  const double raw = static_cast<double>(n) * x / (1.0 - x);
  return static_cast<long>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
}

} // namespace

Rational post_inversion_exact_value(const FiniteSeq& seq, double x, int n, int exact_order_bound) {
  if (n < 1) throw std::domain_error("post_inversion: n must be >= 1");
  if (n > exact_order_bound)
    throw std::invalid_argument("post_inversion: n exceeds the exact-delta order bound");
  const long j = post_index(x, n);

  std::vector<Rational> moments(n + 1);
  for (int i = 0; i <= n; ++i) moments[i] = moment_value_exact(seq, j + i);

  // Delta^n A(j) = sum_i C(n,i) (-1)^{n-i} A(j+i), exactly
  Rational delta = 0;
  for (int i = 0; i <= n; ++i) {
    Rational term = Rational(binomial_big(n, i)) * moments[i];
    if ((n - i) % 2 == 1) term = -term;
    delta += term;
  }
  Rational result = Rational(n + j + 1) * Rational(binomial_big(n + j, n)) * delta;
  if (n % 2 == 1) result = -result;
  return result;
}

PostResult post_inversion(const FiniteSeq& seq, double x, int n, PostMode mode,
                          int exact_order_bound) {
  seq.validate();
  if (n < 1) throw std::domain_error("post_inversion: n must be >= 1");
  PostResult result;
  result.j = post_index(x, n);
  result.k = result.j + n;

  if (mode == PostMode::ExactDelta) {
    if (!seq.exact())
      throw std::invalid_argument("post_inversion: exact-delta mode needs an exact window");
    result.estimate = to_double(post_inversion_exact_value(seq, x, n, exact_order_bound));
    return result;
  }

  // E F(X) with X ~ Beta(j+1, n+1): the weight is exp of a log-gamma
  // combination, so no factorial overflow for large n
  const double j = static_cast<double>(result.j);
  const double k = static_cast<double>(result.k);
  const double log_norm = std::lgamma(k + 2.0) - std::lgamma(j + 1.0) - std::lgamma(n + 1.0);
  auto integrand = [&](double t) -> double {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double lw = log_norm + j * std::log(t) + n * std::log1p(-t);
    return std::exp(lw) * eval_from_coeffs_real(seq, t);
  };
  QuadStats stats;
  result.estimate = integrate(integrand, 0.0, 1.0, stats, {1e-12, 1e-14, 28});
  result.quad_error = stats.error_estimate;
  result.converged = stats.converged;
  return result;
}

// --- model wrapper and boundary recovery ----------------------------------

GenFunModel GenFunModel::from_coeffs(FiniteSeq seq) {
  seq.validate();
  GenFunModel model;
  model.tail_ = estimate_tail_ratio(seq);
  model.backing_ = std::move(seq);
  return model;
}

GenFunModel GenFunModel::from_phi(PhiSpec spec) {
  spec.validate_shape();
  GenFunModel model;
  model.backing_ = std::move(spec);
  return model;
}

Complex GenFunModel::value(Complex z) const {
  if (const auto* seq = std::get_if<FiniteSeq>(&backing_)) return eval_from_coeffs(*seq, z, tail_).value;
  return eval_from_phi(std::get<PhiSpec>(backing_), z);
}

namespace {

// continuous-argument increment along the straight segment [za, zb];
// splits until adjacent phase jumps stay below pi/2. Two extra guards
// block 2pi aliasing near the thresholds where the phase velocity peaks:
// the magnitude ratio is held to the same bound, and the two half-step
// increments must add up to the direct one (a hidden full turn shifts
// the sum by 2pi, e.g. on a step bracketing the singularity symmetrically,
// where the magnitude swing alone cancels out).
double walk_phase(const GenFunModel& model, Complex za, Complex zb, Complex fa, Complex fb,
                  int depth) {
  const Complex mid = 0.5 * (za + zb);
  const Complex fm = model.value(mid);
  if (fm == Complex(0.0)) throw std::runtime_error("phi_recover: model vanishes on the path");
  const Complex ratio = fb / fa;
  const double direct = std::arg(ratio);
  const double swing = std::fabs(std::log(std::abs(ratio)));
  const double left = std::arg(fm / fa);
  const double right = std::arg(fb / fm);
  constexpr double bound = std::numbers::pi / 2.0;
  if (std::fabs(direct) < bound && swing < bound && std::fabs(left) < bound &&
      std::fabs(right) < bound && std::fabs(left + right - direct) < 1e-6)
    return direct;
  if (depth > 48)
    throw std::runtime_error(
        "phi_recover: phase-unwrap ambiguity (adjacent samples differ by >= pi/2 at maximal "
        "refinement)");
  return walk_phase(model, za, mid, fa, fm, depth + 1) +
         walk_phase(model, mid, zb, fm, fb, depth + 1);
}

double segment_phase(const GenFunModel& model, Complex za, Complex zb) {
  const Complex fa = model.value(za), fb = model.value(zb);
  if (fa == Complex(0.0) || fb == Complex(0.0))
    throw std::runtime_error("phi_recover: model vanishes on the path");
  return walk_phase(model, za, zb, fa, fb, 0);
}

} // namespace

PhiRecovery phi_recover(const GenFunModel& model, double s, std::vector<double> t_ladder) {
  PhiRecovery out;
  if (s >= 0.0 && s <= 1.0) {
    out.message = "s must lie outside [0, 1]";
    return out;
  }
  if (t_ladder.empty()) t_ladder = {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625};
  for (std::size_t i = 0; i + 1 < t_ladder.size(); ++i)
    if (t_ladder[i] <= t_ladder[i + 1]) {
      out.message = "t ladder must be strictly decreasing and positive";
      return out;
    }
  if (t_ladder.back() <= 0.0) {
    out.message = "t ladder must be positive";
    return out;
  }

  const Complex anchor(0.5, 0.0);
  try {
    const double t0 = t_ladder.front();
    double theta = segment_phase(model, anchor, Complex(0.5, t0));
    theta += segment_phase(model, Complex(0.5, t0), Complex(s, t0));
    out.rungs.emplace_back(t0, theta / std::numbers::pi);
    for (std::size_t i = 1; i < t_ladder.size(); ++i) {
      theta += segment_phase(model, Complex(s, t_ladder[i - 1]), Complex(s, t_ladder[i]));
      out.rungs.emplace_back(t_ladder[i], theta / std::numbers::pi);
    }
  } catch (const std::exception& e) {
    out.message = e.what();
    return out;
  }

  if (out.rungs.size() >= 2) {
    const auto [t1, phi1] = out.rungs[out.rungs.size() - 2];
    const auto [t2, phi2] = out.rungs.back();
    out.estimate = phi2 + (phi2 - phi1) * t2 / (t1 - t2);
  } else {
    out.estimate = out.rungs.back().second;
  }
  out.ok = true;
  return out;
}

} // namespace bellseq
