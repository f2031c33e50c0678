#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "sinr/errors.hpp"

namespace sinr {

/// Default packing constant for the Euclidean plane.
inline constexpr double kPlanePackingConstant = 0.907;

/// Euclidean metric with its Assouad dimension and packing constant.
/// Bounds downstream are computed from (A, C) only, never from
/// dimension-specific formulas, so the doubling abstraction survives even
/// though only Euclidean spaces are instantiable.
struct MetricSpec {
  int dim = 2;
  double packing_constant = kPlanePackingConstant;

  void validate() const {
    if (dim < 1) throw validation_error("MetricSpec: dim must be >= 1");
    if (!(packing_constant > 0))
      throw validation_error("MetricSpec: packing_constant must be positive");
  }
};

/// Path-loss exponent paired with a metric. Fading requires alpha > dim.
struct FadingParams {
  double alpha = 3.0;
  MetricSpec metric;

  void validate() const {
    metric.validate();
    if (!(alpha > metric.dim))
      throw fading_violation_error(
          "FadingParams: path loss alpha must exceed the metric dimension");
  }
};

inline double distance(std::span<const double> p, std::span<const double> q,
                       const MetricSpec& m) {
  if (static_cast<int>(p.size()) != m.dim || static_cast<int>(q.size()) != m.dim)
    throw validation_error("distance: point dimension mismatch");
  double s = 0;
  for (int i = 0; i < m.dim; ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Riemann zeta via partial sum plus the integral tail bound T^{1-x}/(x-1).
/// The partial sum runs until the tail bound drops below 1e-10, capped at
/// T = 10^7 terms; the overall absolute error stays below 1e-9.
inline double zeta(double x) {
  if (!(x > 1)) throw domain_error("zeta: requires x > 1");
  static std::map<double, double> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
  }
  const long cap = 10000000;
  // Smallest T with T^(1-x)/(x-1) < 1e-10, capped.
  long T = cap;
  {
    const double need = std::pow(1e-10 * (x - 1), 1.0 / (1.0 - x));
    if (need < static_cast<double>(cap)) T = static_cast<long>(need) + 1;
  }
  double s = 0;
  for (long t = T; t >= 1; --t) s += std::pow(static_cast<double>(t), -x);
  s += std::pow(static_cast<double>(T), 1.0 - x) / (x - 1.0);
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(x, s);
  }
  return s;
}

/// C' = alpha * C * 4^A * zeta(alpha + 1 - A).
inline double c_prime(const FadingParams& f) {
  f.validate();
  const double A = f.metric.dim;
  const double C = f.metric.packing_constant;
  return f.alpha * C * std::pow(4.0, A) * zeta(f.alpha + 1.0 - A);
}

/// Sufficient sender separation factor: z1(p) = 4 (p C')^(1/alpha).
inline double z1(double p, const FadingParams& f) {
  if (!(p > 0)) throw domain_error("z1: requires p > 0");
  return 4.0 * std::pow(p * c_prime(f), 1.0 / f.alpha);
}

/// Necessary sender separation factor: z2(p) = p^(1/alpha) - 1.
inline double z2(double p, double alpha) {
  if (!(p > 0)) throw domain_error("z2: requires p > 0");
  return std::pow(p, 1.0 / alpha) - 1.0;
}

/// The proven constant approximation factor for the equilength scheduler:
/// C (1 + 2 z1(p_suff) / z2(p_nec))^A.
inline double equilength_ratio_bound(double p_suff, double p_nec,
                                     const FadingParams& f) {
  if (!(p_suff > 0) || !(p_nec > 0))
    throw validation_error(
        "equilength_ratio_bound: requires positive signal levels");
  const double zn = z2(p_nec, f.alpha);
  if (zn <= 0)
    throw degenerate_bound_error("equilength_ratio_bound: z2(p_nec) = 0");
  const double A = f.metric.dim;
  const double C = f.metric.packing_constant;
  return C * std::pow(1.0 + 2.0 * z1(p_suff, f) / zn, A);
}

}  // namespace sinr
