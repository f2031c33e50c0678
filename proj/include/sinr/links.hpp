#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "sinr/errors.hpp"
#include "sinr/logscalar.hpp"
#include "sinr/metric.hpp"

namespace sinr {

enum class Mode { unidirectional, bidirectional };
enum class Precision { floating, log2 };

inline std::string to_string(Mode m) {
  return m == Mode::unidirectional ? "uni" : "bi";
}
inline std::string to_string(Precision p) {
  return p == Precision::floating ? "float" : "log2";
}

/// A communication request from a sender point to a receiver point.
/// In log2 precision the coordinates are exact integers on a line and live
/// in s_exact / r_exact; the double vectors are unused then.
struct Link {
  int id = 0;
  std::vector<double> s, r;
  BigInt s_exact, r_exact;
  double weight = 1.0;
};

/// Parametric oblivious power family P(l) = scale * l^gamma * (lg l)^delta.
/// Covers uniform (0,0), linear (alpha,0), mean (alpha/2,0),
/// Psi (alpha,-1) and lg-length (0,1).
struct PowerAssignment {
  double gamma = 0.0;
  double delta = 0.0;
  double scale = 1.0;

  static PowerAssignment uniform() { return {0, 0, 1}; }
  static PowerAssignment linear(double alpha) { return {alpha, 0, 1}; }
  static PowerAssignment mean(double alpha) { return {alpha / 2, 0, 1}; }
  static PowerAssignment psi(double alpha) { return {alpha, -1, 1}; }
  static PowerAssignment loglen() { return {0, 1, 1}; }

  /// lg P(l) given lg l.
  double log2_power(double log2_len) const {
    double v = std::log2(scale) + gamma * log2_len;
    if (delta != 0) {
      if (!(log2_len > 0))
        throw validation_error(
            "PowerAssignment: delta != 0 requires link lengths > 1");
      v += delta * std::log2(log2_len);
    }
    return v;
  }
};

struct Instance {
  FadingParams fading;
  double beta = 1.0;
  double noise = 0.0;
  Mode mode = Mode::unidirectional;
  Precision precision = Precision::floating;
  std::vector<Link> links;

  int n() const { return static_cast<int>(links.size()); }

  void validate() const {
    fading.validate();
    if (!(beta > 0)) throw validation_error("Instance: beta must be positive");
    if (noise < 0) throw validation_error("Instance: noise must be nonnegative");
    if (precision == Precision::log2 && fading.metric.dim != 1)
      throw validation_error("Instance: log2 precision requires dim 1");
    std::unordered_set<int> ids;
    for (const auto& l : links) {
      if (!ids.insert(l.id).second)
        throw validation_error("Instance: duplicate link id " +
                               std::to_string(l.id));
      if (l.weight < 0)
        throw validation_error("Instance: negative weight on link " +
                               std::to_string(l.id));
      if (precision == Precision::floating) {
        if (static_cast<int>(l.s.size()) != fading.metric.dim ||
            static_cast<int>(l.r.size()) != fading.metric.dim)
          throw validation_error("Instance: coordinate dimension mismatch");
        if (l.s == l.r)
          throw validation_error("Instance: zero-length link " +
                                 std::to_string(l.id));
      } else {
        if (l.s_exact == l.r_exact)
          throw validation_error("Instance: zero-length link " +
                                 std::to_string(l.id));
      }
    }
  }

  int index_of(int id) const {
    for (int i = 0; i < n(); ++i)
      if (links[i].id == id) return i;
    throw validation_error("Instance: unknown link id " + std::to_string(id));
  }
};

/// lg of the length of link v.
inline double log2_length(const Instance& inst, int v) {
  const Link& l = inst.links[v];
  if (inst.precision == Precision::log2)
    return log2_big(boost::multiprecision::abs(l.s_exact - l.r_exact));
  return std::log2(distance(l.s, l.r, inst.fading.metric));
}

/// Link length (float precision; may overflow in log2 precision).
inline double length(const Instance& inst, int v) {
  return std::exp2(log2_length(inst, v));
}

/// ceil(lg length), the length-group key. Exact in log2 precision.
inline long ceil_log2_length(const Instance& inst, int v) {
  const Link& l = inst.links[v];
  if (inst.precision == Precision::log2)
    return ceil_log2_big(boost::multiprecision::abs(l.s_exact - l.r_exact));
  return static_cast<long>(std::ceil(log2_length(inst, v)));
}

/// lg Delta, the lg of the max/min length ratio.
inline double log2_delta_ratio(const Instance& inst) {
  if (inst.links.empty()) return 0;
  double lo = log2_length(inst, 0), hi = lo;
  for (int v = 1; v < inst.n(); ++v) {
    const double l = log2_length(inst, v);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return hi - lo;
}

/// Validate a power assignment against every link length of the instance.
inline void validate_power(const PowerAssignment& P, const Instance& inst) {
  if (!(P.scale > 0))
    throw validation_error("PowerAssignment: scale must be positive");
  for (int v = 0; v < inst.n(); ++v) (void)P.log2_power(log2_length(inst, v));
}

}  // namespace sinr
