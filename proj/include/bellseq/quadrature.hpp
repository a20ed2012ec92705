#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <type_traits>

namespace bellseq {

/// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
/// rule is symmetric).
namespace gl15 {
inline constexpr double nodes[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601700, 0.8482065834104272, 0.9372733924007059, 0.9879925180204854};
inline constexpr double weights[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
} // namespace gl15

template <typename F>
auto gauss15(F&& f, double a, double b) {
  using R = std::invoke_result_t<F, double>;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  R acc = gl15::weights[0] * f(mid);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gl15::nodes[i];
    acc += gl15::weights[i] * (f(mid + dx) + f(mid - dx));
  }
  return half * acc;
}

struct QuadOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_depth = 24;
};

struct QuadStats {
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

template <typename F, typename R>
R adaptive_panel(F& f, double a, double b, R whole, const QuadOptions& opt, int depth,
                 QuadStats& stats) {
  const double mid = 0.5 * (a + b);
  const R left = gauss15(f, a, mid);
  const R right = gauss15(f, mid, b);
  const R refined = left + right;
  const double err = std::abs(refined - whole);
  if (err <= opt.abs_tol || err <= opt.rel_tol * std::abs(refined)) {
    stats.error_estimate += err;
    return refined;
  }
  if (depth >= opt.max_depth) {
    stats.error_estimate += err;
    stats.converged = false;
    return refined;
  }
  return adaptive_panel(f, a, mid, left, opt, depth + 1, stats) +
         adaptive_panel(f, mid, b, right, opt, depth + 1, stats);
}

} // namespace detail

/// Adaptive Gauss-Legendre over [a, b]; integrand may return double or
/// std::complex<double>.
template <typename F>
auto integrate(F&& f, double a, double b, QuadStats& stats, const QuadOptions& opt = {}) {
  using R = std::invoke_result_t<F, double>;
  if (!(a < b)) return R{};
  const R whole = gauss15(f, a, b);
  return detail::adaptive_panel(f, a, b, whole, opt, 0, stats);
}

template <typename F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  QuadStats stats;
  return integrate(std::forward<F>(f), a, b, stats, opt);
}

/// Semi-infinite integral via geometric panels [a, 2a, 4a, ...), stopping
/// once two consecutive panels are negligible against the accumulated value.
template <typename F>
auto integrate_to_inf(F&& f, double a, QuadStats& stats, const QuadOptions& opt = {},
                      int max_panels = 120) {
  using R = std::invoke_result_t<F, double>;
  if (a <= 0) throw std::domain_error("integrate_to_inf: lower limit must be positive");
  R acc{};
  double lo = a;
  int quiet = 0;
  for (int panel = 0; panel < max_panels; ++panel) {
    const double hi = lo * 2.0;
    const R part = integrate(f, lo, hi, stats, opt);
    acc += part;
    if (std::abs(part) <= opt.abs_tol + opt.rel_tol * std::abs(acc)) {
      if (++quiet >= 2) return acc;
    } else {
      quiet = 0;
    }
    lo = hi;
  }
  stats.converged = false;
  return acc;
}

} // namespace bellseq
