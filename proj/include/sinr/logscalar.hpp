#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sinr/errors.hpp"

namespace sinr {

using BigInt = boost::multiprecision::cpp_int;

/// Base-2 logarithm of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& x) {
  if (x <= 0) throw domain_error("log2_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 62) return std::log2(static_cast<double>(x.convert_to<std::int64_t>()));
  // Take the top 62 bits as a double and account for the shift.
  const unsigned shift = bits - 62;
  const BigInt top = x >> shift;
  return std::log2(static_cast<double>(top.convert_to<std::int64_t>())) +
         static_cast<double>(shift);
}

/// Exact ceil(log2 x) for a positive big integer.
inline long ceil_log2_big(const BigInt& x) {
  if (x <= 0) throw domain_error("ceil_log2_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(x);
  const bool pow2 = (x == (BigInt(1) << bits));
  return pow2 ? static_cast<long>(bits) : static_cast<long>(bits) + 1;
}

/// Sign + base-2-logarithm magnitude. Numeric carrier for quantities that
/// overflow doubles (doubly-exponential link lengths).
struct LogScalar {
  int sign = 0;        // -1, 0, +1; log2mag ignored when 0
  double log2mag = 0;  // lg |value|

  static LogScalar zero() { return {}; }

  static LogScalar from_log2(double l) { return {+1, l}; }

  static LogScalar from_double(double v) {
    if (v == 0) return {};
    return {v > 0 ? +1 : -1, std::log2(std::fabs(v))};
  }

  double to_double() const {
    if (sign == 0) return 0;
    return sign * std::exp2(log2mag);
  }

  bool is_zero() const { return sign == 0; }

  friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log2mag + b.log2mag};
  }
  friend LogScalar operator/(const LogScalar& a, const LogScalar& b) {
    if (b.sign == 0) throw domain_error("LogScalar: division by zero");
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.log2mag - b.log2mag};
  }
};

/// value^e for a nonnegative LogScalar and real exponent.
inline LogScalar pow(const LogScalar& a, double e) {
  if (a.sign < 0) throw domain_error("LogScalar pow: negative base");
  if (a.sign == 0) return {};
  return {+1, a.log2mag * e};
}

/// a < b as real numbers.
inline bool lt(const LogScalar& a, const LogScalar& b) {
  if (a.sign != b.sign) return a.sign < b.sign;
  if (a.sign == 0) return false;
  if (a.sign > 0) return a.log2mag < b.log2mag;
  return a.log2mag > b.log2mag;
}
inline bool le(const LogScalar& a, const LogScalar& b) { return !lt(b, a); }

/// Sum of nonnegative terms: align to the dominant exponent, then accumulate
/// in linear space with Kahan compensation.
inline LogScalar sum_nonnegative(const std::vector<LogScalar>& terms) {
  double maxlog = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.sign < 0) throw domain_error("sum_nonnegative: negative term");
    if (t.sign > 0) maxlog = std::max(maxlog, t.log2mag);
  }
  if (!std::isfinite(maxlog)) return {};
  double s = 0, c = 0;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    const double y = std::exp2(t.log2mag - maxlog) - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  if (s <= 0) return {};
  return {+1, maxlog + std::log2(s)};
}

}  // namespace sinr
