#pragma once

#include <cmath>
#include <vector>

#include "sinr/links.hpp"
#include "sinr/logscalar.hpp"

namespace sinr {

namespace detail {

inline double log2_point_dist(const Instance& inst, const std::vector<double>& a,
                              const std::vector<double>& b) {
  return std::log2(distance(a, b, inst.fading.metric));
}

inline double log2_point_dist_exact(const BigInt& a, const BigInt& b) {
  const BigInt d = boost::multiprecision::abs(a - b);
  if (d == 0) return -std::numeric_limits<double>::infinity();
  return log2_big(d);
}

}  // namespace detail

/// lg of the asymmetric link distance d_vw = d(s_v, r_w); in bidirectional
/// mode the minimum over the four endpoint pairs. -inf encodes colocation.
inline double log2_directed_distance(const Instance& inst, int v, int w) {
  const Link& lv = inst.links[v];
  const Link& lw = inst.links[w];
  if (v == w) return log2_length(inst, v);
  if (inst.precision == Precision::log2) {
    const double svrw = detail::log2_point_dist_exact(lv.s_exact, lw.r_exact);
    if (inst.mode == Mode::unidirectional) return svrw;
    return std::min(
        std::min(svrw, detail::log2_point_dist_exact(lv.s_exact, lw.s_exact)),
        std::min(detail::log2_point_dist_exact(lv.r_exact, lw.s_exact),
                 detail::log2_point_dist_exact(lv.r_exact, lw.r_exact)));
  }
  const double svrw = detail::log2_point_dist(inst, lv.s, lw.r);
  if (inst.mode == Mode::unidirectional) return svrw;
  return std::min(std::min(svrw, detail::log2_point_dist(inst, lv.s, lw.s)),
                  std::min(detail::log2_point_dist(inst, lv.r, lw.s),
                           detail::log2_point_dist(inst, lv.r, lw.r)));
}

/// d_vw as a plain double (float precision instances).
inline double directed_distance(const Instance& inst, int v, int w) {
  return std::exp2(log2_directed_distance(inst, v, w));
}

/// Affectance of link w on link v: (P_w/P_v) (l_v / d_wv)^alpha.
inline LogScalar affectance_pair_log(const Instance& inst, int w, int v,
                                     const PowerAssignment& P) {
  if (w == v) throw validation_error("affectance_pair: w == v");
  const double d_wv = log2_directed_distance(inst, w, v);
  if (!std::isfinite(d_wv) && d_wv < 0)
    throw colocation_error("affectance_pair: colocated links " +
                           std::to_string(inst.links[w].id) + ", " +
                           std::to_string(inst.links[v].id));
  const double lv = log2_length(inst, v);
  const double lw = log2_length(inst, w);
  const double lg = P.log2_power(lw) - P.log2_power(lv) +
                    inst.fading.alpha * (lv - d_wv);
  return LogScalar::from_log2(lg);
}

inline double affectance_pair(const Instance& inst, int w, int v,
                              const PowerAssignment& P) {
  return affectance_pair_log(inst, w, v, P).to_double();
}

/// Total affectance of the set S on link v; the self-term is always excluded.
inline LogScalar affectance_set_log(const Instance& inst,
                                    const std::vector<int>& S, int v,
                                    const PowerAssignment& P) {
  if (inst.precision == Precision::log2) {
    std::vector<LogScalar> terms;
    terms.reserve(S.size());
    for (int w : S)
      if (w != v) terms.push_back(affectance_pair_log(inst, w, v, P));
    return sum_nonnegative(terms);
  }
  double s = 0;
  for (int w : S)
    if (w != v) s += affectance_pair(inst, w, v, P);
  return LogScalar::from_double(s);
}

inline double affectance_set(const Instance& inst, const std::vector<int>& S,
                             int v, const PowerAssignment& P) {
  return affectance_set_log(inst, S, v, P).to_double();
}

/// True iff every link of S has total affectance at most 1/p.
inline bool is_p_signal(const Instance& inst, const std::vector<int>& S,
                        const PowerAssignment& P, double p) {
  if (!(p > 0)) throw domain_error("is_p_signal: requires p > 0");
  const LogScalar bound = LogScalar::from_double(1.0 / p);
  for (int v : S)
    if (!le(affectance_set_log(inst, S, v, P), bound)) return false;
  return true;
}

/// SINR reception condition, noise included. With N = 0 this coincides with
/// is_p_signal at p = beta; with N > 0 the verdict depends on P.scale.
inline bool is_sinr_feasible(const Instance& inst, const std::vector<int>& S,
                             const PowerAssignment& P) {
  const LogScalar bound = LogScalar::from_double(1.0 / inst.beta);
  for (int v : S) {
    LogScalar a = affectance_set_log(inst, S, v, P);
    if (inst.noise > 0) {
      // Normalized noise term: N / (P_v / l_v^alpha).
      const double lv = log2_length(inst, v);
      const LogScalar nterm = LogScalar::from_log2(
          std::log2(inst.noise) - P.log2_power(lv) + inst.fading.alpha * lv);
      a = sum_nonnegative({a, nterm});
    }
    if (!le(a, bound)) return false;
  }
  return true;
}

/// Spectral radius of beta*F for the set S, where F_vw = (l_v/d_wv)^alpha
/// off-diagonal and 0 on the diagonal. Below 1 iff some positive power
/// vector makes S a beta-signal set (noise ignored).
inline double pc_spectral_radius(const Instance& inst,
                                 const std::vector<int>& S) {
  const int m = static_cast<int>(S.size());
  if (m == 0) throw validation_error("pc_spectral_radius: empty set");
  if (m == 1) return 0.0;
  std::vector<double> F(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int v = S[i];
    const double lv = log2_length(inst, v);
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const int w = S[j];
      const double d = log2_directed_distance(inst, w, v);
      if (!std::isfinite(d) && d < 0)
        throw colocation_error("pc_feasible: colocated links");
      const double entry = std::exp2(inst.fading.alpha * (lv - d));
      if (!std::isfinite(entry))
        throw oracle_scale_error("pc_feasible: gain matrix entry overflows");
      F[static_cast<size_t>(i) * m + j] = inst.beta * entry;
    }
  }
  // Power iteration with a positive start vector; Collatz-Wielandt bounds
  // give the spectral radius of the nonnegative matrix.
  std::vector<double> x(m, 1.0), y(m);
  double rho = 0;
  for (int it = 0; it < 200000; ++it) {
    double norm = 0;
    for (int i = 0; i < m; ++i) {
      double s = 0;
      for (int j = 0; j < m; ++j) s += F[static_cast<size_t>(i) * m + j] * x[j];
      y[i] = s;
      norm = std::max(norm, s);
    }
    if (norm == 0) return 0.0;  // nilpotent interference pattern
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (int i = 0; i < m; ++i) {
      if (x[i] > 0 && y[i] > 0) {
        lo = std::min(lo, y[i] / x[i]);
        hi = std::max(hi, y[i] / x[i]);
      } else if (y[i] > 0) {
        hi = std::numeric_limits<double>::infinity();
      }
    }
    rho = hi;
    if (std::isfinite(lo) && std::isfinite(hi) && hi - lo <= 1e-10 * hi) break;
    // Keep the iterate strictly positive so ratios stay informative.
    for (int i = 0; i < m; ++i) x[i] = y[i] / norm + 1e-300;
  }
  return rho;
}

/// True iff S is schedulable in one slot under some positive power vector.
inline bool pc_feasible(const Instance& inst, const std::vector<int>& S) {
  return pc_spectral_radius(inst, S) < 1.0;
}

}  // namespace sinr
