#include "bellseq/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bellseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double value_tolerance = 1e-9;  // snap for integer-touching sampled values

} // namespace

double PhiSpec::PowerLaw::amplitude() const {
  return lambda / std::numbers::pi * std::sin(nu * std::numbers::pi);
}

double PhiSpec::neg_value(double s) const {
  // thresholds ascending; value = #{m : s < v_m}
  std::size_t count = 0;
  for (auto it = neg_thresholds.rbegin(); it != neg_thresholds.rend(); ++it) {
    if (s < to_double(*it)) ++count;
    else break;
  }
  return static_cast<double>(count);
}

double PhiSpec::pos_value(double s) const {
  if (const auto* steps = std::get_if<Steps>(&pos)) {
    std::size_t count = 0;
    for (const auto& w : steps->thresholds) {
      if (s > to_double(w)) ++count;
      else break;
    }
    return static_cast<double>(count);
  }
  if (const auto* pw = std::get_if<Piecewise>(&pos)) {
    if (pw->breaks.empty() || s <= pw->breaks.front()) return 0.0;
    std::size_t i = 0;
    while (i + 1 < pw->breaks.size() && s > pw->breaks[i + 1]) ++i;
    return pw->levels[i];
  }
  const auto& pl = std::get<PowerLaw>(pos);
  return pl.amplitude() * std::pow(s - 1.0, pl.nu);
}

double PhiSpec::operator()(double s) const {
  if (s < 0.0) return neg_value(s);
  if (s <= 1.0) return 0.0;
  return pos_value(s);
}

void PhiSpec::validate_shape() const {
  if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("PhiSpec: b must be finite and >= 0");
  if (!std::isfinite(c)) throw std::invalid_argument("PhiSpec: c must be finite");
  for (std::size_t i = 0; i < neg_thresholds.size(); ++i) {
    if (neg_thresholds[i] >= 0) throw std::invalid_argument("PhiSpec: negative-side thresholds must be < 0");
    if (i > 0 && neg_thresholds[i - 1] > neg_thresholds[i])
      throw std::invalid_argument("PhiSpec: negative-side thresholds must be sorted ascending");
  }
  if (const auto* steps = std::get_if<Steps>(&pos)) {
    for (std::size_t i = 0; i < steps->thresholds.size(); ++i) {
      if (steps->thresholds[i] <= 1) throw std::invalid_argument("PhiSpec: step thresholds must be > 1");
      if (i > 0 && steps->thresholds[i - 1] > steps->thresholds[i])
        throw std::invalid_argument("PhiSpec: step thresholds must be sorted ascending");
    }
  } else if (const auto* pw = std::get_if<Piecewise>(&pos)) {
    if (pw->breaks.size() != pw->levels.size())
      throw std::invalid_argument("PhiSpec: piecewise breaks and levels must have equal length");
    for (std::size_t i = 0; i < pw->breaks.size(); ++i) {
      if (pw->breaks[i] < 1.0) throw std::invalid_argument("PhiSpec: piecewise breaks must be >= 1");
      if (i > 0 && pw->breaks[i - 1] >= pw->breaks[i])
        throw std::invalid_argument("PhiSpec: piecewise breaks must be strictly increasing");
      if (pw->levels[i] < 0.0) throw std::invalid_argument("PhiSpec: piecewise levels must be >= 0");
    }
  } else {
    const auto& pl = std::get<PowerLaw>(pos);
    if (!(pl.lambda > 0.0)) throw std::invalid_argument("PhiSpec: power-law lambda must be positive");
    if (!(pl.nu > 0.0 && pl.nu <= 1.0)) throw std::invalid_argument("PhiSpec: power-law nu must be in (0, 1]");
  }
}

double PhiSpec::pos_tail_cutoff(double tail_tol) const {
  double cutoff = 2.0;
  if (const auto* steps = std::get_if<Steps>(&pos)) {
    const double height = static_cast<double>(steps->thresholds.size());
    if (!steps->thresholds.empty())
      cutoff = std::max({2.0, 2.0 * to_double(steps->thresholds.back()), height / tail_tol});
  } else if (const auto* pw = std::get_if<Piecewise>(&pos)) {
    if (!pw->breaks.empty()) {
      const double tail_level = pw->levels.back();
      cutoff = std::max(2.0, 2.0 * pw->breaks.back());
      if (tail_level > 0.0) cutoff = std::max(cutoff, tail_level / tail_tol);
    }
  } else {
    const auto& pl = std::get<PowerLaw>(pos);
    const double a = pl.amplitude();
    if (a > 0.0 && pl.nu < 1.0)
      cutoff = std::max(2.0, std::pow(a / ((1.0 - pl.nu) * tail_tol), 1.0 / (1.0 - pl.nu)));
  }
  return std::min(cutoff, 1e30);
}

// --- increasing-after-rounding on samples --------------------------------

IarReport increasing_after_rounding(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("increasing_after_rounding: need at least 2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first <= 1.0)
      throw std::invalid_argument("increasing_after_rounding: samples must satisfy s > 1");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw std::invalid_argument("increasing_after_rounding: unsorted input");
  }

  // A level n is violated exactly when some earlier sample sits strictly
  // above n and a later one strictly below it (a downward integer
  // crossing): either the single flip runs the wrong way or the level
  // flips twice. Scanning with a running maximum finds the smallest such
  // level in one pass instead of one pass per integer level.
  IarReport report;
  double running_max = -kInf;
  std::size_t argmax = 0;
  long best_level = 0;
  std::size_t best_lo = 0, best_hi = 0;
  bool found = false;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double v = samples[j].second;
    const long candidate = static_cast<long>(std::floor(v + value_tolerance)) + 1;
    if (static_cast<double>(candidate) < running_max - value_tolerance &&
        static_cast<double>(candidate) > v + value_tolerance) {
      if (!found || candidate < best_level) {
        found = true;
        best_level = candidate;
        best_lo = argmax;
        best_hi = j;
      }
    }
    if (v > running_max) {
      running_max = v;
      argmax = j;
    }
  }
  if (found) {
    report.ok = false;
    report.violating_level = static_cast<int>(best_level);
    // canonical witness: first sample above the level, then the first
    // sample below it after that point
    std::size_t above = best_lo;
    for (std::size_t i = 0; i <= best_lo; ++i)
      if (samples[i].second > static_cast<double>(best_level) + value_tolerance) {
        above = i;
        break;
      }
    report.witness = {above, best_hi};
  }
  return report;
}

// --- five-condition validation -------------------------------------------

namespace {

std::vector<double> pos_sample_grid(const PhiSpec& spec, std::size_t density) {
  const double cutoff = spec.pos_tail_cutoff();
  std::vector<double> grid;
  const double delta0 = 1e-6;
  const std::size_t n = density;
  const double ratio = std::pow(cutoff / delta0, 1.0 / static_cast<double>(n - 1));
  double step = delta0;
  for (std::size_t i = 0; i < n; ++i) {
    grid.push_back(1.0 + step);
    step *= ratio;
  }
  // anchor just after every jump point so piece levels are all visited
  auto push_near = [&grid, cutoff](double s) {
    if (s > 1.0 && s <= 1.0 + cutoff) {
      grid.push_back(s * (1 + 1e-12) + 1e-12);
      if (s * 0.999 > 1.0) grid.push_back(s * 0.999);
    }
  };
  if (const auto* steps = std::get_if<PhiSpec::Steps>(&spec.pos)) {
    for (const auto& w : steps->thresholds) push_near(to_double(w));
  } else if (const auto* pw = std::get_if<PhiSpec::Piecewise>(&spec.pos)) {
    for (double bp : pw->breaks) push_near(bp);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool check_iar_on_grid(const PhiSpec& spec, std::size_t density) {
  const auto grid = pos_sample_grid(spec, density);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(grid.size());
  for (double s : grid) samples.emplace_back(s, spec.pos_value(s));
  return increasing_after_rounding(samples).ok;
}

// integral of value(s)/s^2 over [a, b] by midpoint on a log-spaced subgrid
double tail_panel_integral(const PhiSpec& spec, double a, double b, bool negative_side) {
  const int n = 48;
  const double lr = std::log(b / a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = a * std::exp((i + 0.5) * lr / n);
    const double ds = a * (std::exp((i + 1.0) * lr / n) - std::exp(i * lr / n));
    const double v = negative_side ? spec.neg_value(-s) : spec.pos_value(s);
    acc += v / (s * s) * ds;
  }
  return acc;
}

bool tail_integrable_side(const PhiSpec& spec, bool negative_side) {
  double a = 4.0;
  double prev = tail_panel_integral(spec, a, 2 * a, negative_side);
  int shrinking = 0;
  for (int j = 0; j < 24; ++j) {
    a *= 2.0;
    const double cur = tail_panel_integral(spec, a, 2 * a, negative_side);
    if (cur <= prev * 0.95 + 1e-300) ++shrinking;
    else shrinking = 0;
    prev = cur;
    if (cur < 1e-14) return true;  // tail already negligible
  }
  return shrinking >= 6;
}

// increments of int (1 - value) / (s - 1) over shrinking dyadic windows at 1+
bool diverges_near_one(const PhiSpec& spec) {
  const int points = 24;
  double delta = 0.0625;
  int good = 0;
  for (int j = 0; j < 14; ++j) {
    const double lo = std::log(delta / 2), hi = std::log(delta);
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
      const double u = lo + (i + 0.5) * (hi - lo) / points;
      acc += (1.0 - spec.pos_value(1.0 + std::exp(u))) * (hi - lo) / points;
    }
    // each halving contributes about (1 - avg value) * log 2
    if (acc >= 0.05 * std::numbers::ln2) ++good;
    else good = 0;
    delta *= 0.5;
  }
  return good >= 6;
}

bool neg_steps_ok(const PhiSpec& spec) {
  // representation is integer-valued by construction; verify the sampled
  // profile is nonincreasing and the thresholds are strictly negative
  for (const auto& v : spec.neg_thresholds)
    if (v >= 0) return false;
  if (spec.neg_thresholds.empty()) return true;
  const double lo = 2.0 * to_double(spec.neg_thresholds.front());
  double prev = spec.neg_value(lo);
  for (int i = 1; i <= 256; ++i) {
    const double s = lo * (1.0 - static_cast<double>(i) / 257.0);
    const double cur = spec.neg_value(s);
    if (cur > prev + value_tolerance) return false;
    if (std::fabs(cur - std::round(cur)) > value_tolerance) return false;
    prev = cur;
  }
  return true;
}

} // namespace

PhiConditionReport validate_phi(const PhiSpec& spec) {
  spec.validate_shape();
  PhiConditionReport report;
  std::ostringstream detail;

  report.neg_integer_steps = neg_steps_ok(spec);
  if (!report.neg_integer_steps) detail << "negative side is not stepwise decreasing; ";

  // zero on the closed interval [0, 1]: thresholds < 0 and positive-side
  // support strictly above 1 are structural, so sample the boundary
  report.zero_on_unit_interval =
      spec(0.0) == 0.0 && spec(0.5) == 0.0 && spec(1.0) == 0.0 && spec.neg_value(-0.0) == 0.0;
  if (!report.zero_on_unit_interval) detail << "profile is nonzero on [0, 1]; ";

  // refine the grid until the verdict stabilizes twice
  bool last = check_iar_on_grid(spec, 128);
  int stable = 0;
  for (std::size_t density = 256; density <= 1024; density *= 2) {
    const bool cur = check_iar_on_grid(spec, density);
    if (cur == last) ++stable;
    else stable = 0;
    last = cur;
    if (stable >= 2) break;
  }
  report.increasing_after_rounding = last;
  if (!last) detail << "increasing-after-rounding fails on the sample grid; ";

  report.tail_integrable = tail_integrable_side(spec, false) && tail_integrable_side(spec, true);
  if (!report.tail_integrable) detail << "value(s)/s^2 tail does not converge; ";

  report.nonintegrable_near_one = diverges_near_one(spec);
  if (!report.nonintegrable_near_one)
    detail << "(1 - value)/(s - 1) shows no divergence trend at 1+; ";

  report.passed = report.neg_integer_steps && report.zero_on_unit_interval &&
                  report.increasing_after_rounding && report.tail_integrable &&
                  report.nonintegrable_near_one;
  report.detail = detail.str();
  return report;
}

// --- decomposition ---------------------------------------------------------

namespace {

struct Piece {
  double lo, hi;  // profile == level on (lo, hi]
  double level;
};

std::vector<Piece> pos_pieces(const PhiSpec::Piecewise& pw) {
  std::vector<Piece> pieces;
  if (pw.breaks.empty()) return pieces;
  if (pw.breaks.front() > 1.0) pieces.push_back({1.0, pw.breaks.front(), 0.0});
  for (std::size_t i = 0; i < pw.breaks.size(); ++i) {
    const double hi = i + 1 < pw.breaks.size() ? pw.breaks[i + 1] : kInf;
    pieces.push_back({pw.breaks[i], hi, pw.levels[i]});
  }
  return pieces;
}

} // namespace

PhiDecomposition decompose_phi(const PhiSpec& spec) {
  spec.validate_shape();
  PhiDecomposition out;
  out.pf.b = spec.b;
  out.pf.c = spec.c;
  for (const auto& v : spec.neg_thresholds) out.pf.q.push_back(Rational(-1) / v);
  std::sort(out.pf.q.begin(), out.pf.q.end());

  if (const auto* steps = std::get_if<PhiSpec::Steps>(&spec.pos)) {
    out.pos_steps = steps->thresholds;
    for (const auto& w : out.pos_steps) out.pf.p.push_back(Rational(1) / w);
    std::sort(out.pf.p.begin(), out.pf.p.end());
    out.pf.validate();
    return out;
  }

  if (const auto* pl = std::get_if<PhiSpec::PowerLaw>(&spec.pos)) {
    if (pl->amplitude() > 0.0)
      throw std::domain_error(
          "decompose_phi: power-law profile is unbounded on (1, inf); the step factor "
          "would need infinitely many thresholds (finite factor lists only)");
    out.pf.validate();
    return out;
  }

  const auto& pw = std::get<PhiSpec::Piecewise>(spec.pos);
  const auto pieces = pos_pieces(pw);
  double max_level = 0.0;
  for (const auto& piece : pieces) max_level = std::max(max_level, piece.level);

  // Leftmost admissible thresholds t_k = sup{s : value < k}; shifted right
  // to inf{s : value > k} when the integer part would fail to vanish near 1.
  std::vector<double> thresholds;
  for (long k = 1; k <= static_cast<long>(std::ceil(max_level)); ++k) {
    double sup_below = 1.0;  // sup of {s : value(s) < k}, scanning pieces
    bool unbounded = false;
    for (const auto& piece : pieces) {
      if (piece.level < static_cast<double>(k)) {
        sup_below = piece.hi;
        if (piece.hi == kInf) unbounded = true;
      }
    }
    if (unbounded) break;  // value stays below k arbitrarily far: no threshold
    double t = sup_below;
    if (t <= 1.0) {
      double inf_above = kInf;
      for (const auto& piece : pieces)
        if (piece.level > static_cast<double>(k)) { inf_above = piece.lo; break; }
      if (inf_above <= 1.0)
        throw std::domain_error(
            "decompose_phi: profile exceeds 1 on every right neighbourhood of 1; "
            "no step factor can vanish near 1");
      t = inf_above;
    }
    if (!thresholds.empty()) t = std::max(t, thresholds.back());
    if (t == kInf) break;
    thresholds.push_back(t);
  }

  for (double t : thresholds) {
    const Rational tr = rational_from_double(t);
    out.pos_steps.push_back(tr);
    out.pf.p.push_back(Rational(1) / tr);
  }
  std::sort(out.pf.p.begin(), out.pf.p.end());

  // remainder per piece; must land in [0, 1]
  for (const auto& piece : pieces) {
    std::size_t steps_below = 0;
    for (double t : thresholds)
      if (t <= piece.lo) ++steps_below;
    const double frac = piece.level - static_cast<double>(steps_below);
    if (frac < -1e-9 || frac > 1.0 + 1e-9)
      throw std::invalid_argument(
          "decompose_phi: remainder escapes [0, 1]; the profile is not "
          "increasing-after-rounding");
    out.frac_breaks.push_back(piece.lo);
    out.frac_levels.push_back(std::clamp(frac, 0.0, 1.0));
  }
  out.pf.validate();
  return out;
}

PhiSpec phi_from_pf(const PFParams& params) {
  params.validate();
  PhiSpec spec;
  spec.b = params.b;
  spec.c = params.c;
  for (const auto& qm : params.q)
    if (qm > 0) spec.neg_thresholds.push_back(Rational(-1) / qm);
  std::sort(spec.neg_thresholds.begin(), spec.neg_thresholds.end());
  PhiSpec::Steps steps;
  for (const auto& pm : params.p)
    if (pm > 0) steps.thresholds.push_back(Rational(1) / pm);
  std::sort(steps.thresholds.begin(), steps.thresholds.end());
  for (const auto& w : steps.thresholds) spec.declared_points_of_increase.push_back(to_double(w));
  spec.pos = std::move(steps);
  spec.validate_shape();
  return spec;
}

double decomposition_frac_value(const PhiDecomposition& d, double s) {
  if (d.frac_breaks.empty() || s <= d.frac_breaks.front()) return 0.0;
  std::size_t i = 0;
  while (i + 1 < d.frac_breaks.size() && s > d.frac_breaks[i + 1]) ++i;
  return d.frac_levels[i];
}

} // namespace bellseq
