#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sinr/links.hpp"

namespace sinr {

enum class LowerBoundVariant { forward, reversed, combined };

inline std::string to_string(LowerBoundVariant v) {
  switch (v) {
    case LowerBoundVariant::forward: return "forward";
    case LowerBoundVariant::reversed: return "reversed";
    default: return "combined";
  }
}

namespace detail {

// Canonical uniform doubles so generated instances are reproducible across
// standard libraries.
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<double> unit_direction(std::mt19937_64& rng, int dim) {
  if (dim == 1) return {u01(rng) < 0.5 ? -1.0 : 1.0};
  if (dim == 2) {
    const double a = 2.0 * M_PI * u01(rng);
    return {std::cos(a), std::sin(a)};
  }
  std::vector<double> v(dim);
  double norm2 = 0;
  do {
    for (int i = 0; i < dim; ++i) {
      // Box-Muller, one gaussian per call.
      const double u1 = std::max(u01(rng), 1e-300);
      const double u2 = u01(rng);
      v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    norm2 = 0;
    for (double x : v) norm2 += x * x;
  } while (norm2 == 0);
  const double norm = std::sqrt(norm2);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace detail

/// Senders uniform in [0, side]^dim, receivers at a uniform random direction
/// and length uniform in [len_min, len_max]. Pure function of its arguments.
inline Instance gen_random(int n, double side, double len_min, double len_max,
                           std::uint64_t seed, const FadingParams& fading,
                           double beta, Mode mode = Mode::unidirectional,
                           double w_min = 1.0, double w_max = 1.0) {
  if (!(len_min > 0) || !(len_min <= len_max) || !(len_max <= side))
    throw validation_error("gen_random: need 0 < len_min <= len_max <= side");
  if (!(w_min >= 0) || !(w_min <= w_max))
    throw validation_error("gen_random: need 0 <= w_min <= w_max");
  fading.validate();
  Instance inst;
  inst.fading = fading;
  inst.beta = beta;
  inst.mode = mode;
  std::mt19937_64 rng(seed);
  const int dim = fading.metric.dim;
  for (int i = 0; i < n; ++i) {
    Link l;
    l.id = i;
    l.s.resize(dim);
    for (int d = 0; d < dim; ++d) l.s[d] = side * detail::u01(rng);
    const double len = len_min + (len_max - len_min) * detail::u01(rng);
    const auto dir = detail::unit_direction(rng, dim);
    l.r.resize(dim);
    for (int d = 0; d < dim; ++d) l.r[d] = l.s[d] + len * dir[d];
    l.weight = w_min + (w_max - w_min) * detail::u01(rng);
    inst.links.push_back(std::move(l));
  }
  inst.validate();
  return inst;
}

/// m x m unit-length vertical links with senders on the lattice (i q, j q).
inline Instance gen_grid(int m, double q, const FadingParams& fading,
                         double beta) {
  if (m < 1) throw validation_error("gen_grid: m must be >= 1");
  if (!(q > 0)) throw validation_error("gen_grid: q must be positive");
  if (fading.metric.dim != 2)
    throw validation_error("gen_grid: requires dim 2");
  fading.validate();
  Instance inst;
  inst.fading = fading;
  inst.beta = beta;
  int id = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Link l;
      l.id = id++;
      l.s = {i * q, j * q};
      l.r = {i * q, j * q + 1.0};
      inst.links.push_back(std::move(l));
    }
  inst.validate();
  return inst;
}

namespace detail {

inline BigInt pow_int(long base, long exp) {
  BigInt r = 1;
  for (long i = 0; i < exp; ++i) r *= base;
  return r;
}

// 2^(t^e) as an exact integer.
inline BigInt doubly_exp(long t, long e) {
  const BigInt ex = pow_int(t, e);
  if (ex > 40000000)
    throw validation_error("gen_lowerbound: construction too large");
  return BigInt(1) << ex.convert_to<unsigned long>();
}

}  // namespace detail

/// Collinear construction with doubly-exponentially growing lengths
/// l_i = 2^(t^(i+c1)): receiver r_i at +a_(i-1), sender s_i at
/// -(l_i - a_(i-1)), where a_i is the prefix length sum starting from
/// l_0 = 2^(t^c1). The reversed variant swaps every sender and receiver;
/// combined holds both copies translated 2^(t^(n+c1+1)) apart.
inline Instance gen_lowerbound(int n, long t, long c1, double alpha,
                               LowerBoundVariant variant) {
  if (t < 4) throw validation_error("gen_lowerbound: t must be >= 4");
  if (n < 1) throw validation_error("gen_lowerbound: n must be >= 1");
  if (c1 < 0) throw validation_error("gen_lowerbound: c1 must be >= 0");
  Instance inst;
  inst.fading.alpha = alpha;
  inst.fading.metric.dim = 1;
  inst.fading.metric.packing_constant = 1.0;  // unit interval packing
  inst.fading.validate();
  inst.beta = 1.0;

  std::vector<BigInt> s(n + 1), r(n + 1);  // 1-based
  BigInt a_prev = detail::doubly_exp(t, c1);  // a_0 = l_0
  for (int i = 1; i <= n; ++i) {
    const BigInt li = detail::doubly_exp(t, i + c1);
    r[i] = a_prev;
    s[i] = -(li - a_prev);
    a_prev += li;
  }

  const bool reversed_copy = variant != LowerBoundVariant::forward;
  const bool forward_copy = variant != LowerBoundVariant::reversed;
  BigInt shift = 0;
  if (variant == LowerBoundVariant::combined)
    shift = detail::doubly_exp(t, n + c1 + 1);

  // Float precision only while every coordinate fits a double exactly.
  const BigInt max_exp = detail::pow_int(
      t, variant == LowerBoundVariant::combined ? n + c1 + 1 : n + c1);
  inst.precision = max_exp > 52 ? Precision::log2 : Precision::floating;

  int id = 0;
  auto emit = [&](const BigInt& sv, const BigInt& rv) {
    Link l;
    l.id = id++;
    if (inst.precision == Precision::log2) {
      l.s_exact = sv;
      l.r_exact = rv;
    } else {
      l.s = {sv.convert_to<double>()};
      l.r = {rv.convert_to<double>()};
    }
    inst.links.push_back(std::move(l));
  };
  if (forward_copy)
    for (int i = 1; i <= n; ++i) emit(s[i], r[i]);
  if (reversed_copy)
    for (int i = 1; i <= n; ++i) emit(r[i] + shift, s[i] + shift);
  inst.validate();
  return inst;
}

}  // namespace sinr
