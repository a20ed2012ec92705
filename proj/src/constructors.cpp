#include "bellseq/constructors.hpp"

#include <cmath>
#include <stdexcept>

namespace bellseq {

bool HausdorffMeasure::atom_at_one() const {
  for (const auto& a : atoms)
    if (a.location == 1) return true;
  return false;
}

Rational HausdorffMeasure::total_mass() const {
  Rational mass = 0;
  for (const auto& a : atoms) mass += a.weight;
  for (std::size_t i = 0; i < density_levels.size(); ++i)
    mass += density_levels[i] * (density_breaks[i + 1] - density_breaks[i]);
  return mass;
}

void HausdorffMeasure::validate() const {
  for (const auto& a : atoms) {
    if (a.location < 0 || a.location > 1)
      throw std::invalid_argument("HausdorffMeasure: atom location outside [0, 1]");
    if (a.weight <= 0) throw std::invalid_argument("HausdorffMeasure: atom weight must be positive");
  }
  if (!density_levels.empty()) {
    if (density_breaks.size() != density_levels.size() + 1)
      throw std::invalid_argument("HausdorffMeasure: breaks must be one longer than levels");
    for (std::size_t i = 0; i + 1 < density_breaks.size(); ++i)
      if (density_breaks[i] >= density_breaks[i + 1])
        throw std::invalid_argument("HausdorffMeasure: breaks must be strictly increasing");
    if (density_breaks.front() < 0 || density_breaks.back() > 1)
      throw std::invalid_argument("HausdorffMeasure: density support outside [0, 1]");
    for (const auto& l : density_levels)
      if (l < 0) throw std::invalid_argument("HausdorffMeasure: density level must be nonnegative");
  } else if (!density_breaks.empty()) {
    throw std::invalid_argument("HausdorffMeasure: breaks given without levels");
  }
  if (total_mass() <= 0) throw std::invalid_argument("HausdorffMeasure: total mass must be positive");
}

HausdorffMeasure HausdorffMeasure::point_mass(const Rational& location, const Rational& weight) {
  HausdorffMeasure mu;
  mu.atoms.push_back({location, weight});
  mu.validate();
  return mu;
}

HausdorffMeasure HausdorffMeasure::lebesgue() {
  HausdorffMeasure mu;
  mu.density_breaks = {Rational(0), Rational(1)};
  mu.density_levels = {Rational(1)};
  return mu;
}

void PFParams::validate() const {
  if (b < 0 || !std::isfinite(b)) throw std::invalid_argument("PFParams: b must be finite and >= 0");
  if (!std::isfinite(c)) throw std::invalid_argument("PFParams: c must be finite");
  for (const auto& pm : p)
    if (pm < 0 || pm >= 1)
      throw std::invalid_argument("PFParams: each p_m must lie in [0, 1) (not summable otherwise)");
  for (const auto& qm : q)
    if (qm < 0) throw std::invalid_argument("PFParams: each q_m must be >= 0");
}

PFParams PFParams::geometric(const Rational& ratio) {
  PFParams params;
  params.p = {ratio};
  params.validate();
  return params;
}

PFParams PFParams::bernoulli(const Rational& q) {
  PFParams params;
  params.q = {q};
  params.validate();
  return params;
}

PFParams PFParams::poisson(double rate) {
  PFParams params;
  params.b = rate;
  params.c = -rate;
  params.validate();
  return params;
}

namespace {

// a(k) = sum_atoms w s^k + sum_pieces level (s2^{k+1} - s1^{k+1}) / (k+1)
template <typename T>
std::vector<T> moments_of(const HausdorffMeasure& mu, long K) {
  std::vector<T> out(K + 1, T{});
  for (const auto& atom : mu.atoms) {
    T w, s;
    if constexpr (std::is_same_v<T, double>) {
      w = to_double(atom.weight);
      s = to_double(atom.location);
    } else {
      w = atom.weight;
      s = atom.location;
    }
    T power = w;  // w * s^0, with the 0^0 = 1 convention
    for (long k = 0; k <= K; ++k) {
      out[k] += power;
      power *= s;
    }
  }
  for (std::size_t i = 0; i < mu.density_levels.size(); ++i) {
    T s1, s2, level;
    if constexpr (std::is_same_v<T, double>) {
      s1 = to_double(mu.density_breaks[i]);
      s2 = to_double(mu.density_breaks[i + 1]);
      level = to_double(mu.density_levels[i]);
    } else {
      s1 = mu.density_breaks[i];
      s2 = mu.density_breaks[i + 1];
      level = mu.density_levels[i];
    }
    T p1 = s1, p2 = s2;
    for (long k = 0; k <= K; ++k) {
      out[k] += level * (p2 - p1) / T(k + 1);
      p1 *= s1;
      p2 *= s2;
    }
  }
  return out;
}

template <typename T>
std::vector<T> pf_coeffs(const PFParams& params, long K, double b, double c) {
  std::vector<T> coeffs(K + 1, T{});
  if constexpr (std::is_same_v<T, double>) {
    coeffs[0] = std::exp(c);
    for (long k = 0; k < K; ++k) coeffs[k + 1] = coeffs[k] * b / static_cast<double>(k + 1);
  } else {
    (void)b;
    (void)c;
    coeffs[0] = 1;  // exact path requires b = c = 0
  }
  for (const auto& qm : params.q) {
    T q;
    if constexpr (std::is_same_v<T, double>) q = to_double(qm);
    else q = qm;
    for (long k = K; k >= 1; --k) coeffs[k] += q * coeffs[k - 1];
  }
  for (const auto& pm : params.p) {
    T p;
    if constexpr (std::is_same_v<T, double>) p = to_double(pm);
    else p = pm;
    for (long k = 1; k <= K; ++k) coeffs[k] += p * coeffs[k - 1];
  }
  return coeffs;
}

} // namespace

FiniteSeq cm_from_measure(const HausdorffMeasure& mu, long K, ArithMode mode) {
  mu.validate();
  if (K < 0) throw std::invalid_argument("cm_from_measure: K must be >= 0");
  if (mode == ArithMode::Rational) return FiniteSeq(moments_of<Rational>(mu, K));
  return FiniteSeq(moments_of<double>(mu, K));
}

FiniteSeq pf_from_params(const PFParams& params, long K, ArithMode mode) {
  params.validate();
  if (K < 0) throw std::invalid_argument("pf_from_params: K must be >= 0");
  if (mode == ArithMode::Rational) {
    if (!params.exact_eligible())
      throw std::invalid_argument("pf_from_params: exact mode requires b = 0 and c = 0");
    return FiniteSeq(pf_coeffs<Rational>(params, K, 0.0, 0.0));
  }
  return FiniteSeq(pf_coeffs<double>(params, K, params.b, params.c));
}

FiniteSeq negative_binomial(double p, double lambda, long K) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("negative_binomial: p must be in (0, 1)");
  if (!(lambda > 0)) throw std::invalid_argument("negative_binomial: lambda must be positive");
  if (K < 0) throw std::invalid_argument("negative_binomial: K must be >= 0");
  std::vector<double> a(K + 1);
  a[0] = std::pow(1.0 - p, lambda);
  for (long k = 0; k < K; ++k) a[k + 1] = p * (static_cast<double>(k) + lambda) / static_cast<double>(k + 1) * a[k];
  return FiniteSeq(std::move(a));
}

FiniteSeq discrete_stable(double lambda, double nu, long K) {
  if (!(lambda > 0)) throw std::invalid_argument("discrete_stable: lambda must be positive");
  if (!(nu > 0 && nu <= 1)) throw std::invalid_argument("discrete_stable: nu must be in (0, 1]");
  if (K < 0) throw std::invalid_argument("discrete_stable: K must be >= 0");

  // g(x) = -lambda (1-x)^nu expanded by the binomial series; the ratio
  // recurrence g_{k+1} = g_k (k - nu) / (k + 1) is stable and overflow-free.
  std::vector<double> g(K + 1);
  g[0] = -lambda;
  for (long k = 0; k < K; ++k) g[k + 1] = g[k] * (static_cast<double>(k) - nu) / static_cast<double>(k + 1);

  // exp composition: a(k) = (1/k) sum_{j=1..k} j g_j a(k-j); all terms
  // nonnegative for nu <= 1, so no cancellation.
  std::vector<double> a(K + 1);
  a[0] = std::exp(g[0]);
  for (long k = 1; k <= K; ++k) {
    double acc = 0.0;
    for (long j = 1; j <= k; ++j) acc += static_cast<double>(j) * g[j] * a[k - j];
    a[k] = acc / static_cast<double>(k);
  }
  return FiniteSeq(std::move(a));
}

FiniteSeq bell_from_factors(const PFParams& pf, const HausdorffMeasure& mu, long K, ArithMode mode) {
  if (mu.atom_at_one())
    throw std::invalid_argument(
        "bell_from_factors: measure has an atom at 1, so the monotone factor "
        "would not converge to zero");
  return convolve(pf_from_params(pf, K, mode), cm_from_measure(mu, K, mode));
}

BellFactorSample sample_bell_factors(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count_dist(0, 3);
  std::uniform_int_distribution<int> atom_count_dist(1, 3);
  std::uniform_real_distribution<double> p_dist(0.1, 0.9);
  std::uniform_real_distribution<double> q_dist(0.0, 2.0);
  std::uniform_real_distribution<double> b_dist(0.0, 3.0);
  std::uniform_real_distribution<double> loc_dist(0.0, 0.95);
  std::uniform_real_distribution<double> weight_dist(0.1, 2.0);
  std::uniform_int_distribution<int> coin(0, 1);

  BellFactorSample sample;
  const int np = count_dist(rng), nq = count_dist(rng);
  for (int i = 0; i < np; ++i) sample.pf.p.push_back(rational_from_double(p_dist(rng)));
  for (int i = 0; i < nq; ++i) sample.pf.q.push_back(rational_from_double(q_dist(rng)));
  sample.pf.b = b_dist(rng);

  const int na = atom_count_dist(rng);
  for (int i = 0; i < na; ++i)
    sample.mu.atoms.push_back(
        {rational_from_double(loc_dist(rng)), rational_from_double(weight_dist(rng))});
  if (coin(rng)) {
    sample.mu.density_breaks = {Rational(0), rational_from_double(0.5 + 0.45 * p_dist(rng))};
    sample.mu.density_levels = {rational_from_double(weight_dist(rng))};
  }
  return sample;
}

} // namespace bellseq
